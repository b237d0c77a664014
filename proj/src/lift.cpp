#include "spectral/lift.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "lift_detail.hpp"
#include "spectral/error.hpp"

namespace spectral {

namespace detail {

Rational snap_or_exact(double v, double tol) {
  auto s = snap(v, tol);
  return s ? *s : exact(v);
}

QVec snap_to_face(const MaxAffineFn& f, const QVec& q, const Vec& v, double tol) {
  const std::size_t n = q.size();
  double vmax = 0.0;
  for (double x : v) vmax = std::max(vmax, std::abs(x));
  auto eval = [&](const QVec& a) {
    double s = 0.0, an = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      s += a[k].get_d() * v[k];
      an += std::abs(a[k].get_d());
    }
    return std::pair{s, tol * (1.0 + an) * (1.0 + vmax)};
  };
  std::vector<QVec> rows;
  QVec rhs;
  for (const auto& c : f.constraints()) {
    auto [lhs, slack] = eval(c.c);
    if (lhs > c.d.get_d() + slack) return q;
    if (lhs >= c.d.get_d() - slack) {
      rows.push_back(c.c);
      rhs.push_back(c.d);
    }
  }
  // pieces within rounding of the maximum are tied to the top piece
  const auto& pieces = f.pieces();
  std::vector<double> val(pieces.size()), slack(pieces.size());
  std::size_t top = 0;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    auto [s, sl] = eval(pieces[i].a);
    val[i] = s + pieces[i].b.get_d();
    slack[i] = sl;
    if (val[i] > val[top]) top = i;
  }
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (i == top || val[i] < val[top] - slack[i] - slack[top]) continue;
    rows.push_back(sub(pieces[i].a, pieces[top].a));
    rhs.push_back(pieces[top].b - pieces[i].b);
  }
  if (rows.empty()) return q;
  auto x0 = solve(rows, rhs, n);
  if (!x0) return q;
  QVec p = AffineSpace::from_generators(*x0, nullspace(rows, n)).project(q);
  if (!f.in_domain(p)) return q;
  // the move must stay at rounding scale
  for (std::size_t k = 0; k < n; ++k)
    if (std::abs(Rational(p[k] - q[k]).get_d()) > 1e3 * tol * (1.0 + vmax)) return q;
  return p;
}

double value_at(const MaxAffineFn& f, const QVec& q, const Vec& v) {
  if (!f.in_domain(q)) return std::numeric_limits<double>::infinity();
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& p : f.pieces()) {
    double s = p.b.get_d();
    for (std::size_t k = 0; k < v.size(); ++k)
      if (sgn(p.a[k]) != 0) s += p.a[k].get_d() * v[k];
    best = std::max(best, s);
  }
  return best;
}

bool vector_test(const GenPolyhedron& p, const Vec& w, SubdiffTest which, double tol) {
  const double scale = tol * (1.0 + norm2(w));
  QVec ws;
  for (double v : w) ws.push_back(snap_or_exact(v, tol * (1.0 + std::abs(v))));
  AffineSpace aff = p.affine_hull();
  // the gap is measured on w itself; snapping may move it by up to tol per entry
  QVec we = exact(w);
  bool aff_ok = norm2(to_double(sub(we, aff.project(we)))) <= scale;
  QVec on_aff = aff.project(ws);
  if (which == SubdiffTest::aff || !aff_ok) return aff_ok;
  bool member = p.contains(on_aff) || p.linf_distance(on_aff).get_d() <= scale;
  if (which == SubdiffTest::member || !member) return member;
  bool ri = p.ri_contains(on_aff);
  return which == SubdiffTest::ri ? ri : !ri;
}

}  // namespace detail

SpectralFn::SpectralFn(MaxAffineFn base, SpectralKind kind) : base_(std::move(base)), kind_(kind) {
  if (kind_ == SpectralKind::eigenvalue && base_.mode() == SymmetryMode::plain)
    throw InputError("eigenvalue functions need a permutation-invariant base");
  if (kind_ == SpectralKind::singular && base_.mode() != SymmetryMode::signed_perm)
    throw InputError("singular-value functions need a signed-permutation-invariant base");
  // lambda^{-1} only symmetrizes over permutations, so a signed base is
  // stratified with permutation orbits
  if (kind_ == SpectralKind::eigenvalue && base_.mode() == SymmetryMode::signed_perm)
    base_ = MaxAffineFn::make(base_.dim(), base_.pieces(), base_.constraints(), SymmetryMode::permutation,
                              base_.name());
}

const Stratification& SpectralFn::strata() const {
  std::call_once(cache_->once, [this] { cache_->strat = stratify(base_); });
  return cache_->strat;
}

namespace {

double resolve_tol(double tol, const Matrix& x) { return tol < 0 ? default_grouping_tol(x) : tol; }

}  // namespace

QVec rational_spectrum(const EigenPair& e, double grouping_tol) {
  return snap_grouped(e.lambda, grouping_tol);
}

double spectral_value(const SpectralFn& f, const Matrix& x, double grouping_tol) {
  if (f.kind() != SpectralKind::eigenvalue) throw InputError("spectral_value needs an eigenvalue function");
  auto e = eig_sym(x);
  if (e.lambda.size() != f.dim()) throw InputError("matrix size does not match the function dimension");
  double tol = resolve_tol(grouping_tol, x);
  return detail::value_at(f.base(), detail::snap_to_face(f.base(), rational_spectrum(e, tol), e.lambda, tol),
                          e.lambda);
}

SpectralSubdiffCert spectral_subdiff(const SpectralFn& f, const Matrix& x, double grouping_tol) {
  if (f.kind() != SpectralKind::eigenvalue) throw InputError("spectral_subdiff needs an eigenvalue function");
  SpectralSubdiffCert c;
  c.grouping_tol = resolve_tol(grouping_tol, x);
  c.eig = eig_sym(x);
  if (c.eig.lambda.size() != f.dim()) throw InputError("matrix size does not match the function dimension");
  c.lambda = detail::snap_to_face(f.base(), rational_spectrum(c.eig, c.grouping_tol), c.eig.lambda,
                                     c.grouping_tol);
  c.blocks = partition_of(c.eig.lambda, c.grouping_tol);
  if (!f.base().in_domain(c.lambda)) throw InputError("lambda(X) is outside the domain");
  c.vec_subdiff = subdiff(f.base(), c.lambda);
  return c;
}

std::optional<Vec> aligned_diagonal(const SpectralSubdiffCert& cert, const Matrix& v, double tol) {
  Matrix vs = symmetrize(v);
  const std::size_t n = cert.eig.lambda.size();
  if (vs.rows() != n) throw InputError("matrix size mismatch");
  Matrix x = reconstruct(cert.eig);
  double vn = vs.frobenius_norm();
  if (commutator(x, vs).frobenius_norm() > tol * (1.0 + x.frobenius_norm() * vn)) return std::nullopt;
  Matrix w = cert.eig.U * vs * cert.eig.U.transpose();
  std::vector<std::size_t> block_of(n);
  for (std::size_t b = 0; b < cert.blocks.blocks.size(); ++b)
    for (std::size_t i : cert.blocks.blocks[b]) block_of[i] = b;
  double off = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (block_of[i] != block_of[j]) off += w(i, j) * w(i, j);
  if (std::sqrt(off) > tol * (1.0 + vn)) return std::nullopt;
  Vec diag(n);
  for (const auto& block : cert.blocks.blocks) {
    if (block.size() == 1) {
      diag[block[0]] = w(block[0], block[0]);
      continue;
    }
    Matrix sub(block.size(), block.size());
    for (std::size_t i = 0; i < block.size(); ++i)
      for (std::size_t j = 0; j < block.size(); ++j) sub(i, j) = w(block[i], block[j]);
    auto e = eig_sym(sub);
    for (std::size_t i = 0; i < block.size(); ++i) diag[block[i]] = e.lambda[i];
  }
  return diag;
}

bool spectral_ri_aff_rb(const SpectralSubdiffCert& cert, SubdiffTest which, const Matrix& v, double tol) {
  auto d = aligned_diagonal(cert, v, tol);
  if (!d) return false;
  return detail::vector_test(cert.vec_subdiff, *d, which, tol);
}

bool spectral_subdiff_membership(const SpectralSubdiffCert& cert, const Matrix& v, double tol) {
  return spectral_ri_aff_rb(cert, SubdiffTest::member, v, tol);
}

double spectral_distance(const VectorSet& q, const Matrix& x) {
  auto e = eig_sym(x);
  if (e.lambda.size() != q.dim()) throw InputError("matrix size does not match the set dimension");
  return q.distance(e.lambda);
}

Matrix spectral_project(const VectorSet& q, const Matrix& x) {
  auto e = eig_sym(x);
  if (e.lambda.size() != q.dim()) throw InputError("matrix size does not match the set dimension");
  Vec p = q.project(e.lambda);
  // a symmetric set projects a sorted vector to a sorted vector
  for (std::size_t i = 0; i + 1 < p.size(); ++i)
    if (p[i] < p[i + 1] - 1e-12 * (1.0 + std::abs(p[i]))) throw Error("projection is not sorted");
  return conjugate_by(e.U, Matrix::diagonal(p));
}

QVec vector_prox(const MaxAffineFn& f, const Stratification& s, const Rational& t, const QVec& x) {
  if (sgn(t) <= 0) throw InputError("prox parameter must be positive");
  for (const auto& m : s.strata) {
    const QVec& a = f.pieces()[m.pieces.front()].a;
    QVec y = m.hull.project(sub(x, scale(t, a)));
    if (!s.in_closure(f, &m - s.strata.data(), y)) continue;
    QVec g = scale(Rational(1) / t, sub(x, y));
    if (subdiff(f, y).contains(g)) return y;
  }
  throw Error("prox: no stratum satisfies the optimality condition");
}

Matrix spectral_prox(const SpectralFn& f, double t, const Matrix& x, bool verify, double grouping_tol) {
  if (f.kind() != SpectralKind::eigenvalue) throw InputError("spectral_prox needs an eigenvalue function");
  if (!(t > 0) || !std::isfinite(t)) throw InputError("prox parameter must be positive");
  double tol = resolve_tol(grouping_tol, x);
  auto e = eig_sym(x);
  if (e.lambda.size() != f.dim()) throw InputError("matrix size does not match the function dimension");
  QVec lam = rational_spectrum(e, tol);
  QVec y = vector_prox(f.base(), f.strata(), detail::snap_or_exact(t, 1e-12 * t), lam);
  Matrix out = conjugate_by(e.U, Matrix::diagonal(to_double(y)));
  if (verify) {
    auto cert = spectral_subdiff(f, out, tol);
    Matrix g = (x - out) * (1.0 / t);
    if (!spectral_subdiff_membership(cert, g, 1e-7)) throw Error("prox optimality residual check failed");
  }
  return out;
}

Partition forced_equalities(const AffineSpace& hull, const QVec& rep) {
  const std::size_t n = rep.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rep[i] != rep[j]) continue;
      bool forced = true;
      for (const auto& b : hull.basis) forced = forced && b[i] == b[j];
      if (forced) parent[root(j)] = root(i);
    }
  }
  // blocks ordered by value (decreasing), indices increasing
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rep[a] > rep[b]; });
  Partition p;
  std::vector<long> block_of_root(n, -1);
  for (std::size_t i : order) {
    std::size_t r = root(i);
    if (block_of_root[r] < 0) {
      block_of_root[r] = static_cast<long>(p.blocks.size());
      p.blocks.emplace_back();
    }
    p.blocks[static_cast<std::size_t>(block_of_root[r])].push_back(i);
  }
  for (auto& b : p.blocks) std::sort(b.begin(), b.end());
  return p;
}

LiftedStratum lift_dim(const AffineSpace& hull, const QVec& rep) {
  LiftedStratum l;
  l.base_dim = static_cast<long>(hull.dim());
  l.pattern = forced_equalities(hull, rep);
  l.dim_lifted = l.base_dim + orbit_dim(l.pattern);
  return l;
}

LiftedStratum lift_dim(const Stratification& s, std::size_t orbit) {
  std::size_t member = s.orbits.at(orbit).front();
  const Stratum& m = s.strata[member];
  LiftedStratum l = lift_dim(m.hull, m.representative);
  l.orbit = orbit;
  l.member = member;
  return l;
}

LiftedStratification lift_stratification(const SpectralFn& f) {
  const Stratification& s = f.strata();
  LiftedStratification out;
  out.dual = conjugate_stratification(f.base(), s);
  for (std::size_t o = 0; o < s.orbits.size(); ++o) {
    LiftedPair p;
    p.primal = lift_dim(s, o);
    const RelOpen& d = out.dual.strata[p.primal.member];
    p.dual = lift_dim(d.closure.affine_hull(), d.closure.ri_point());
    p.dual.orbit = o;
    p.dual.member = p.primal.member;
    out.pairs.push_back(std::move(p));
  }
  return out;
}

std::optional<std::size_t> lifted_primal_orbit(const SpectralFn& f, const Matrix& x, double grouping_tol) {
  auto e = eig_sym(x);
  if (e.lambda.size() != f.dim()) throw InputError("matrix size does not match the function dimension");
  double tol = resolve_tol(grouping_tol, x);
  auto k = f.strata().locate(f.base(), detail::snap_to_face(f.base(), rational_spectrum(e, tol), e.lambda, tol));
  if (!k) return std::nullopt;
  return f.strata().strata[*k].orbit;
}

std::optional<std::size_t> dual_orbit_of(const MaxAffineFn& f, const Stratification& s, const QVec& y) {
  GenPolyhedron g = conjugate_subdiff(f, y);
  if (g.empty()) return std::nullopt;
  auto k = s.locate(f, g.ri_point());
  if (!k) return std::nullopt;
  if (!subdiff(f, s.strata[*k].representative).ri_contains(y)) return std::nullopt;
  return s.strata[*k].orbit;
}

std::optional<std::size_t> lifted_dual_orbit(const SpectralFn& f, const Matrix& y, double grouping_tol) {
  auto e = eig_sym(y);
  if (e.lambda.size() != f.dim()) throw InputError("matrix size does not match the function dimension");
  return dual_orbit_of(f.base(), f.strata(), rational_spectrum(e, resolve_tol(grouping_tol, y)));
}

}  // namespace spectral
