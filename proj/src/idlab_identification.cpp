#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "spectral/error.hpp"
#include "spectral/idlab.hpp"

namespace spectral {

std::string to_string(SequenceGenerator g) {
  switch (g) {
    case SequenceGenerator::prox_path: return "prox_path";
    case SequenceGenerator::random_neighbor: return "random_neighbor";
    case SequenceGenerator::adversarial: return "adversarial";
  }
  return "?";
}

SequenceGenerator parse_generator(const std::string& s) {
  if (s == "prox_path") return SequenceGenerator::prox_path;
  if (s == "random_neighbor") return SequenceGenerator::random_neighbor;
  if (s == "adversarial") return SequenceGenerator::adversarial;
  throw InputError("unknown sequence generator '" + s + "'");
}

namespace {

Rational step_size(int i) { return Rational(1, 2 * (i + 1)); }

// Index of the first iterate from which every later one is in M; the
// length of the sequence when the last one is not.
double tail_index(const std::vector<bool>& in_m) {
  std::size_t k = in_m.size();
  while (k > 0 && in_m[k - 1]) --k;
  return static_cast<double>(k);
}

QVec random_unit_exact(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vec v(n);
  for (double& x : v) x = g(rng);
  double nv = norm2(v);
  QVec q;
  for (double x : v) q.push_back(exact(x / nv));
  return q;
}

void check_subgradient(const MaxAffineFn& f, const QVec& xbar, const QVec& vbar) {
  if (xbar.size() != f.dim() || vbar.size() != f.dim()) throw InputError("dimension mismatch");
  if (!f.in_domain(xbar)) throw InputError("base point outside the domain");
  if (!subdiff(f, xbar).contains(vbar)) throw InputError("vbar is not a subgradient at xbar");
}

// Strata S with xbar in cl S and vbar in df(S): along any of them a
// sequence with constant subgradient vbar converges to (xbar, vbar).
std::vector<std::size_t> admissible_neighbors(const MaxAffineFn& f, const Stratification& s,
                                              const QVec& xbar, const QVec& vbar) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < s.strata.size(); ++k)
    if (s.in_closure(f, k, xbar) && subdiff(f, s.strata[k].representative).contains(vbar))
      out.push_back(k);
  return out;
}

// A point q of stratum k near its representative (random direction in
// its affine hull); falls back to the representative.
QVec jittered_member(const MaxAffineFn& f, const Stratification& s, std::size_t k,
                     std::mt19937_64& rng) {
  const Stratum& st = s.strata[k];
  std::uniform_int_distribution<int> w(-8, 8);
  QVec q = st.representative;
  for (const auto& b : st.hull.basis) q = add(q, scale(Rational(w(rng), 64), b));
  auto at = s.locate(f, q);
  return at && *at == k ? q : st.representative;
}

std::vector<QVec> segment_sequence(const QVec& xbar, const QVec& q) {
  std::vector<QVec> xs;
  QVec d = sub(q, xbar);
  for (int i = 0; i < kSequenceLength; ++i) xs.push_back(add(xbar, scale(step_size(i), d)));
  return xs;
}

}  // namespace

ProbeReport identifiability_test(const MaxAffineFn& f, const Stratification& s, std::size_t m,
                                 const QVec& xbar, const QVec& vbar, SequenceGenerator gen,
                                 int trials, std::uint64_t seed) {
  check_subgradient(f, xbar, vbar);
  if (m >= s.strata.size()) throw InputError("stratum index out of range");
  const std::size_t target = s.strata[m].orbit;
  ProbeReport r;
  r.name = "identifiability/" + to_string(gen);
  r.threshold = kSequenceLength - kMinTail;
  r.seed = seed;
  std::mt19937_64 rng(seed);
  auto in_m = [&](const QVec& x) {
    auto k = s.locate(f, x);
    return k && s.strata[*k].orbit == target;
  };
  auto run = [&](const std::vector<QVec>& xs) {
    std::vector<bool> flags;
    for (const auto& x : xs) flags.push_back(in_m(x));
    r.record(to_double(xs.back()), tail_index(flags));
  };
  auto neighbors = admissible_neighbors(f, s, xbar, vbar);
  switch (gen) {
    case SequenceGenerator::prox_path:
      for (int t = 0; t < trials; ++t) {
        std::vector<QVec> xs;
        for (int i = 0; i < kSequenceLength; ++i) {
          Rational h = step_size(i);
          QVec z = add(add(xbar, scale(h, vbar)), scale(h * h, random_unit_exact(f.dim(), rng)));
          QVec x = vector_prox(f, s, h, z);
          if (!subdiff(f, x).contains(scale(Rational(1) / h, sub(z, x))))
            throw Error("prox path produced an inadmissible pair");
          xs.push_back(std::move(x));
        }
        run(xs);
      }
      break;
    case SequenceGenerator::random_neighbor:
      for (int t = 0; t < trials; ++t) {
        std::size_t k = neighbors[std::uniform_int_distribution<std::size_t>(0, neighbors.size() - 1)(rng)];
        run(segment_sequence(xbar, jittered_member(f, s, k, rng)));
      }
      break;
    case SequenceGenerator::adversarial:
      for (std::size_t k : neighbors) run(segment_sequence(xbar, s.strata[k].representative));
      break;
  }
  return r;
}

ProbeReport lifted_identifiability_test(const SpectralFn& F, std::size_t m, const QVec& xbar,
                                        const QVec& vbar, SequenceGenerator gen, int trials,
                                        std::uint64_t seed) {
  if (F.kind() != SpectralKind::eigenvalue) throw InputError("lifted test needs an eigenvalue function");
  const MaxAffineFn& f = F.base();
  const Stratification& s = F.strata();
  check_subgradient(f, xbar, vbar);
  if (m >= s.strata.size()) throw InputError("stratum index out of range");
  const std::size_t n = f.dim(), target = s.strata[m].orbit;
  ProbeReport r;
  r.name = "lifted_identifiability/" + to_string(gen);
  r.threshold = kSequenceLength - kMinTail;
  r.seed = seed;
  std::mt19937_64 rng(seed);
  Matrix u = random_orthogonal(n, rng);
  Vec xb = to_double(xbar), vb = to_double(vbar);
  Matrix xbar_m = conjugate_by(u, Matrix::diagonal(xb));
  Matrix vbar_m = conjugate_by(u, Matrix::diagonal(vb));
  // admissibility slack per pair: spectra are snapped at the grouping
  // tolerance, which a prox step h amplifies by 1/h in the subgradient
  auto run = [&](const std::vector<std::pair<Matrix, Matrix>>& seq, const std::vector<double>& slack) {
    std::vector<bool> flags;
    bool admissible = true;
    for (std::size_t i = 0; i < seq.size(); ++i) {
      const auto& [x, v] = seq[i];
      auto o = lifted_primal_orbit(F, x);
      flags.push_back(o && *o == target);
      admissible = admissible && spectral_subdiff_membership(spectral_subdiff(F, x), v, slack[i]);
    }
    double tail = tail_index(flags);
    if (!admissible) {
      tail = std::numeric_limits<double>::infinity();
      r.detail = "generated pair is not a subgradient pair";
    }
    r.record(Vec(seq.back().first.data().begin(), seq.back().first.data().end()), tail);
  };
  auto neighbors = admissible_neighbors(f, s, xbar, vbar);
  switch (gen) {
    case SequenceGenerator::prox_path:
      for (int t = 0; t < trials; ++t) {
        std::vector<std::pair<Matrix, Matrix>> seq;
        std::vector<double> slack;
        for (int i = 0; i < kSequenceLength; ++i) {
          double h = step_size(i).get_d();
          Matrix e = random_symmetric(n, rng);
          Matrix z = xbar_m + vbar_m * h + e * (h * h / e.frobenius_norm());
          Matrix x = spectral_prox(F, h, z);
          seq.emplace_back(x, (z - x) * (1.0 / h));
          slack.push_back(1e-7 + 4.0 * default_grouping_tol(z) / h);
        }
        run(seq, slack);
      }
      break;
    case SequenceGenerator::random_neighbor:
      for (int t = 0; t < trials; ++t) {
        std::size_t k = neighbors[std::uniform_int_distribution<std::size_t>(0, neighbors.size() - 1)(rng)];
        auto xs = segment_sequence(xbar, jittered_member(f, s, k, rng));
        Matrix skew = random_symmetric(n, rng);
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j <= i; ++j) skew(i, j) = i == j ? 0.0 : -skew(j, i);
        std::vector<std::pair<Matrix, Matrix>> seq;
        for (int i = 0; i < kSequenceLength; ++i) {
          Matrix rot = cayley(skew, step_size(i).get_d()) * u;
          seq.emplace_back(conjugate_by(rot, Matrix::diagonal(to_double(xs[i]))),
                           conjugate_by(rot, Matrix::diagonal(vb)));
        }
        run(seq, std::vector<double>(seq.size(), 1e-7));
      }
      break;
    case SequenceGenerator::adversarial:
      for (std::size_t k : neighbors) {
        std::vector<std::pair<Matrix, Matrix>> seq;
        for (const auto& x : segment_sequence(xbar, s.strata[k].representative))
          seq.emplace_back(conjugate_by(u, Matrix::diagonal(to_double(x))), vbar_m);
        run(seq, std::vector<double>(seq.size(), 1e-7));
      }
      break;
  }
  return r;
}

// ---- partial smoothness ----------------------------------------------------

ProbeReport partial_smoothness_check(const MaxAffineFn& f, const AffineSpace& m, const QVec& xbar,
                                     PartialSmoothness* out) {
  if (!f.in_domain(xbar)) throw InputError("base point outside the domain");
  if (!m.contains(xbar)) throw InputError("base point is not on the manifold");
  PartialSmoothness ps;
  auto pieces = f.active_pieces(xbar);
  auto cons = f.active_constraints(xbar);
  // (i) every active piece has the same slope along M and M stays in dom f
  ps.smooth = true;
  for (const auto& d : m.basis) {
    Rational slope = dot(f.pieces()[pieces.front()].a, d);
    for (std::size_t i : pieces) ps.smooth = ps.smooth && dot(f.pieces()[i].a, d) == slope;
    for (std::size_t j : cons) ps.smooth = ps.smooth && sgn(dot(f.constraints()[j].c, d)) == 0;
  }
  // (iii) para aff df(xbar) is the normal space of M
  GenPolyhedron g = subdiff(f, xbar);
  AffineSpace normal = AffineSpace::from_generators(QVec(f.dim(), Rational(0)), m.complement());
  ps.sharp = g.affine_hull().same_parallel(normal);
  // (iv) df is constant on M near xbar
  ps.continuous = true;
  const Rational eps(1, 1 << 20);
  for (const auto& d : m.basis) {
    for (int sign : {1, -1}) {
      QVec y = add(xbar, scale(eps * sign, d));
      ps.continuous = ps.continuous && f.in_domain(y) && subdiff(f, y) == g;
    }
  }
  // (ii) the epigraph is probed near (xbar, f(xbar))
  PolyhedralSet epi(f.epigraph_inequalities(), "epi", SymmetryMode::plain);
  Vec base = to_double(xbar);
  base.push_back(f.value(xbar)->get_d());
  ps.prox_regular = prox_regularity_probe(epi, base, 0.5, 8, 0).pass;

  ProbeReport r;
  r.name = "partial_smoothness";
  r.threshold = 0;
  std::string failed;
  int count = 0;
  auto note = [&](bool ok, const char* what) {
    if (ok) return;
    ++count;
    failed += failed.empty() ? what : std::string(",") + what;
  };
  note(ps.smooth, "smoothness");
  note(ps.prox_regular, "prox_regularity");
  note(ps.sharp, "sharpness");
  note(ps.continuous, "continuity");
  r.record(to_double(xbar), count);
  r.detail = failed;
  if (out) *out = ps;
  return r;
}

ProbeReport partial_smoothness_check(const MaxAffineFn& f, const Stratification& s,
                                     std::size_t m, const QVec& xbar, PartialSmoothness* out) {
  auto k = s.locate(f, xbar);
  if (!k || *k != m) throw InputError("base point is not in the stratum");
  return partial_smoothness_check(f, s.strata[m].hull, xbar, out);
}

UniquenessVerdict local_uniqueness_check(const MaxAffineFn& f, const AffineSpace& m1,
                                         const AffineSpace& m2, const QVec& xbar, double radius,
                                         int samples, std::uint64_t seed) {
  UniquenessVerdict v;
  if (!m1.contains(xbar) || !m2.contains(xbar)) return v;
  if (!partial_smoothness_check(f, m1, xbar).pass || !partial_smoothness_check(f, m2, xbar).pass)
    return v;
  v.applicable = true;
  v.agree = true;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> w(-1000, 1000);
  Rational rad = exact(radius);
  for (int t = 0; t < samples && v.agree; ++t) {
    const AffineSpace& from = t % 2 == 0 ? m1 : m2;
    const AffineSpace& to = t % 2 == 0 ? m2 : m1;
    if (from.basis.empty()) continue;
    QVec d(xbar.size(), Rational(0));
    for (const auto& b : from.basis) d = add(d, scale(Rational(w(rng), 1000), b));
    // keep the sample inside the ball: scale by radius / max-norm bound
    Rational bound = 0;
    for (const auto& x : d) bound += abs(x);
    if (sgn(bound) == 0) continue;
    QVec y = add(xbar, scale(rad / (bound * static_cast<long>(xbar.size()) + 1), d));
    ++v.samples;
    if (!to.contains(y)) {
      v.agree = false;
      v.witness = y;
    }
  }
  return v;
}

// ---- proximal identification -------------------------------------------

std::string eigen_pattern(const Vec& lambda, double tol) {
  Partition p = partition_of(lambda, tol);
  std::string s;
  for (const auto& block : p.blocks) {
    if (!s.empty()) s += '|';
    double mean = 0.0;
    for (std::size_t i : block) mean += lambda[i];
    mean /= static_cast<double>(block.size());
    char c = mean > tol ? '+' : mean < -tol ? '-' : '0';
    s.append(block.size(), c);
  }
  return s;
}

IdentificationTrace proximal_identification_run(const SpectralFn& f, const Matrix& x0, double t,
                                                int max_iter, double grouping_tol) {
  if (!(t > 0) || !std::isfinite(t)) throw InputError("step must be positive");
  if (max_iter < 0) throw InputError("max_iter must be nonnegative");
  IdentificationTrace tr;
  tr.t = t;
  Matrix x = symmetrize(x0);
  tr.grouping_tol = grouping_tol < 0 ? default_grouping_tol(x) : grouping_tol;
  auto push = [&](const Matrix& m) {
    TraceEntry e;
    e.x = m;
    e.lambda = eig_sym(m).lambda;
    e.pattern = eigen_pattern(e.lambda, tr.grouping_tol);
    e.value = spectral_value(f, m, tr.grouping_tol);
    tr.iterates.push_back(std::move(e));
  };
  push(x);
  for (int k = 0; k < max_iter; ++k) {
    Matrix next = spectral_prox(f, t, x, false, tr.grouping_tol);
    double step = (next - x).frobenius_norm();
    push(next);
    x = next;
    if (step <= 1e-12) {
      tr.fixed_point = true;
      break;
    }
  }
  const std::string& limit = tr.iterates.back().pattern;
  std::size_t k = tr.iterates.size();
  while (k > 0 && tr.iterates[k - 1].pattern == limit) --k;
  std::size_t after = tr.iterates.size() - 1 - k;
  if (tr.fixed_point || after >= static_cast<std::size_t>(kMinTail)) tr.identified_at = k;
  return tr;
}

}  // namespace spectral
