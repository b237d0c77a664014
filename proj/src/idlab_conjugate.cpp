#include <cmath>
#include <limits>

#include "spectral/error.hpp"
#include "spectral/idlab.hpp"

namespace spectral {

namespace {

double objective(const std::function<double(const Vec&)>& f, const Vec& x, const Vec& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s - f(x);
}

}  // namespace

double numeric_conjugate(const std::function<double(const Vec&)>& f, const Vec& y,
                         const ConjugateGrid& grid) {
  const std::size_t n = y.size();
  if (n == 0 || grid.points < 3 || !(grid.half_width > 0)) throw InputError("bad conjugate grid");
  const double h = 2.0 * grid.half_width / (grid.points - 1);
  auto coord = [&](int k) { return -grid.half_width + h * k; };

  std::vector<int> idx(n, 0), best_idx;
  Vec x(n);
  double best = -std::numeric_limits<double>::infinity();
  for (;;) {
    for (std::size_t i = 0; i < n; ++i) x[i] = coord(idx[i]);
    double v = objective(f, x, y);
    if (v > best) {
      best = v;
      best_idx = idx;
    }
    std::size_t i = 0;
    while (i < n && ++idx[i] == grid.points) idx[i++] = 0;
    if (i == n) break;
  }
  if (!std::isfinite(best)) throw InconclusiveError("objective is not finite on the grid");
  for (int k : best_idx)
    if (k == 0 || k == grid.points - 1) throw InconclusiveError("supremum found on the grid boundary");

  for (std::size_t i = 0; i < n; ++i) x[i] = coord(best_idx[i]);
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int sweep = 0; sweep < grid.sweeps; ++sweep) {
    for (std::size_t c = 0; c < n; ++c) {
      double lo = x[c] - h, hi = x[c] + h;
      auto at = [&](double s) {
        Vec z = x;
        z[c] = s;
        return objective(f, z, y);
      };
      double a = hi - phi * (hi - lo), b = lo + phi * (hi - lo);
      double fa = at(a), fb = at(b);
      for (int it = 0; it < grid.refine_iters; ++it) {
        if (fa < fb) {
          lo = a;
          a = b;
          fa = fb;
          b = lo + phi * (hi - lo);
          fb = at(b);
        } else {
          hi = b;
          b = a;
          fb = fa;
          a = hi - phi * (hi - lo);
          fa = at(a);
        }
      }
      double s = 0.5 * (lo + hi);
      if (at(s) > at(x[c])) x[c] = s;
    }
  }
  return std::max(best, objective(f, x, y));
}

}  // namespace spectral
