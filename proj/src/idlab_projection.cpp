#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "spectral/error.hpp"
#include "spectral/idlab.hpp"

namespace spectral {

void ProbeReport::record(const Vec& input, double value) {
  ++trials;
  if (trials == 1 || value > measured || std::isnan(value)) {
    measured = value;
    worst_input = input;
  }
  if (!(value <= threshold)) pass = false;
}

void ProbeReport::merge(const ProbeReport& other) {
  bool first = trials == 0;
  trials += other.trials;
  pass = pass && other.pass;
  if (first || other.measured > measured) {
    measured = other.measured;
    worst_input = other.worst_input;
    if (!other.detail.empty()) detail = other.detail;
  }
}

namespace {

Vec gaussian(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vec v(n);
  for (double& x : v) x = g(rng);
  return v;
}

Vec in_ball(const Vec& c, double radius, std::mt19937_64& rng) {
  Vec d = gaussian(c.size(), rng);
  double nd = norm2(d);
  double r = radius * std::pow(std::uniform_real_distribution<double>(0, 1)(rng),
                               1.0 / static_cast<double>(c.size()));
  Vec y = c;
  for (std::size_t i = 0; i < c.size(); ++i) y[i] += r * d[i] / nd;
  return y;
}

double dist(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

double half_sq_norm(const Vec& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return 0.5 * s;
}

// Random nonnegative integer combination of the generators (lineality
// vectors enter with both signs already).
std::optional<QVec> sample_cone(const GenPolyhedron& k, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> w(0, 4);
  QVec d(k.ambient(), Rational(0));
  for (const auto& r : k.rays()) d = add(d, scale(Rational(w(rng)), r));
  if (is_zero(d)) return std::nullopt;
  return d;
}

}  // namespace

ProbeReport moreau_gradient_check(const VectorSet& q, const Vec& x, double step, double tol) {
  ProbeReport r;
  r.name = "moreau_gradient";
  r.threshold = tol;
  Vec p = q.project(x);
  auto h = [&](const Vec& z) {
    double d = q.distance(z);
    return half_sq_norm(z) - 0.5 * d * d;
  };
  double worst = 0.0;
  Vec z = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    z[i] = x[i] + step;
    double hp = h(z);
    z[i] = x[i] - step;
    double hm = h(z);
    z[i] = x[i];
    worst = std::max(worst, std::abs((hp - hm) / (2.0 * step) - p[i]));
  }
  r.record(x, worst);
  return r;
}

ProbeReport moreau_gradient_probe(const VectorSet& q, int trials, std::uint64_t seed,
                                  double scale_, double step, double tol) {
  ProbeReport r;
  r.name = "moreau_gradient";
  r.threshold = tol;
  r.seed = seed;
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    Vec x = gaussian(q.dim(), rng);
    for (double& v : x) v *= scale_;
    r.merge(moreau_gradient_check(q, x, step, tol));
  }
  return r;
}

ProbeReport projection_derivative_check(const PolyhedralSet& q, const QVec& xbar, int samples,
                                        std::uint64_t seed, const std::vector<QVec>& extra,
                                        const std::vector<double>& steps, double tol,
                                        std::vector<DirectionDefects>* out) {
  if (!q.inequalities().contains(xbar)) throw InputError("base point is not in Q");
  ProbeReport r;
  r.name = "projection_derivative";
  r.threshold = tol;
  r.seed = seed;
  std::mt19937_64 rng(seed);
  GenPolyhedron nc = q.normal(xbar), tc = q.tangent(xbar);
  std::vector<std::pair<QVec, bool>> dirs;
  for (const auto& d : extra) {
    if (nc.contains(d)) dirs.emplace_back(d, true);
    else if (tc.contains(d)) dirs.emplace_back(d, false);
    else throw InputError("direction is neither normal nor tangent");
  }
  for (int k = 0; k < samples; ++k) {
    if (auto d = sample_cone(nc, rng)) dirs.emplace_back(*d, true);
    if (auto d = sample_cone(tc, rng)) dirs.emplace_back(*d, false);
  }
  Vec x0 = to_double(xbar);
  for (const auto& [dq, normal] : dirs) {
    Vec d = to_double(dq);
    double nd = norm2(d);
    for (double& v : d) v /= nd;
    DirectionDefects dd{d, normal, {}};
    for (double s : steps) {
      Vec y = x0;
      for (std::size_t i = 0; i < y.size(); ++i) y[i] += s * d[i];
      Vec p = q.project(y);
      Vec quot(y.size());
      for (std::size_t i = 0; i < y.size(); ++i) quot[i] = (p[i] - x0[i]) / s - (normal ? 0.0 : d[i]);
      dd.defects.push_back(norm2(quot));
    }
    bool monotone = true;
    for (std::size_t k = 1; k < dd.defects.size(); ++k)
      monotone = monotone && dd.defects[k] <= dd.defects[k - 1] + 1e-10;
    double v = monotone ? dd.defects.back() : std::numeric_limits<double>::infinity();
    if (!monotone) r.detail = "defect not decreasing along a direction";
    r.record(d, v);
    if (out) out->push_back(std::move(dd));
  }
  return r;
}

namespace {

double diameter(const std::vector<Vec>& pts) {
  double d = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) d = std::max(d, dist(pts[i], pts[j]));
  return d;
}

// Nearest point of the bisector of the two best local minimizers, if any.
std::optional<Vec> bisector_point(const VectorSet& q, const Vec& y, double radius) {
  double d = q.distance(y);
  auto mins = q.near_minimizers(y, 4.0 * radius + d);
  if (mins.size() < 2) return std::nullopt;
  std::sort(mins.begin(), mins.end(),
            [&](const Vec& a, const Vec& b) { return dist(a, y) < dist(b, y); });
  const Vec &p1 = mins[0], &p2 = mins[1];
  Vec diff(y.size());
  double nn = 0.0, g = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    diff[i] = p2[i] - p1[i];
    nn += diff[i] * diff[i];
    g += 2.0 * y[i] * diff[i] + p1[i] * p1[i] - p2[i] * p2[i];
  }
  if (nn == 0.0) return std::nullopt;
  Vec out = y;
  for (std::size_t i = 0; i < y.size(); ++i) out[i] -= g * diff[i] / (2.0 * nn);
  return out;
}

std::vector<Vec> probe_points(const VectorSet& q, const Vec& xbar, double radius, int trials,
                              std::mt19937_64& rng) {
  std::vector<Vec> ys{xbar};
  for (int t = 0; t < trials; ++t) {
    Vec y = in_ball(xbar, radius, rng);
    ys.push_back(y);
    if (auto b = bisector_point(q, y, radius); b && dist(*b, xbar) <= radius) ys.push_back(*b);
  }
  return ys;
}

}  // namespace

ProbeReport prox_regularity_probe(const VectorSet& q, const Vec& xbar, double radius, int trials,
                                  std::uint64_t seed) {
  if (!(radius > 0)) throw InputError("radius must be positive");
  ProbeReport r;
  r.name = "prox_regularity";
  r.threshold = kMinimizerDiameter;
  r.seed = seed;
  std::mt19937_64 rng(seed);
  for (const Vec& y : probe_points(q, xbar, radius, trials, rng))
    r.record(y, diameter(q.near_minimizers(y, kMinimizerSlack)));
  return r;
}

ProbeReport lifted_prox_regularity_probe(const VectorSet& q, const Vec& xbar, double radius,
                                         int trials, std::uint64_t seed) {
  if (!(radius > 0)) throw InputError("radius must be positive");
  const std::size_t n = q.dim();
  ProbeReport r;
  r.name = "lifted_prox_regularity";
  r.threshold = kMinimizerDiameter;
  r.seed = seed;
  std::mt19937_64 rng(seed);
  Matrix xb = Matrix::diagonal(xbar);
  std::vector<Matrix> ys{xb};
  for (int t = 0; t < trials; ++t) {
    Matrix e = random_symmetric(n, rng);
    double ne = e.frobenius_norm();
    double rad = radius * std::pow(std::uniform_real_distribution<double>(0, 1)(rng),
                                   2.0 / static_cast<double>(n * (n + 1)));
    Matrix y = xb + e * (rad / ne);
    ys.push_back(y);
    auto ey = eig_sym(y);
    if (auto b = bisector_point(q, ey.lambda, radius)) {
      Matrix yb = conjugate_by(ey.U, Matrix::diagonal(*b));
      if ((yb - xb).frobenius_norm() <= radius) ys.push_back(yb);
    }
  }
  auto perms = all_permutations(n, false);
  for (std::size_t k = 0; k < ys.size(); ++k) {
    const Matrix& y = ys[k];
    auto e = eig_sym(y);
    double tol = default_grouping_tol(y);
    std::vector<Matrix> bases{e.U};
    for (std::uint64_t s = 1; s <= 2; ++s) bases.push_back(stabilizer_sample(e, tol, seed + 977 * k + s));
    std::vector<std::pair<double, Vec>> cands;  // (distance, flattened Z)
    for (const Vec& p : q.near_minimizers(e.lambda, 1e-6)) {
      for (const auto& sigma : perms) {
        Vec sp = sigma.apply(p);
        for (const Matrix& u : bases) {
          Matrix z = conjugate_by(u, Matrix::diagonal(sp));
          Matrix diff = y - z;
          cands.emplace_back(diff.frobenius_norm(), Vec(z.data().begin(), z.data().end()));
        }
      }
    }
    double best = std::numeric_limits<double>::infinity();
    for (const auto& c : cands) best = std::min(best, c.first);
    std::vector<Vec> near;
    for (const auto& c : cands)
      if (c.first <= best + kMinimizerSlack) near.push_back(c.second);
    r.record(Vec(y.data().begin(), y.data().end()), diameter(near));
  }
  return r;
}

}  // namespace spectral
