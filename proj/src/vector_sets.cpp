#include "spectral/vector_sets.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "spectral/error.hpp"

namespace spectral {

namespace {

double dist(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

void check_dim(const Vec& x, std::size_t n) {
  if (x.size() != n) throw InputError("point has wrong dimension");
  for (double v : x)
    if (!std::isfinite(v)) throw InputError("point has non-finite entries");
}

// keep the points whose distance to x is within slack of the minimum,
// dropping duplicates
std::vector<Vec> within(const std::vector<Vec>& cands, const Vec& x, double slack) {
  double best = INFINITY;
  for (const auto& c : cands) best = std::min(best, dist(c, x));
  std::vector<Vec> out;
  for (const auto& c : cands) {
    if (dist(c, x) > best + slack) continue;
    bool dup = false;
    for (const auto& o : out) dup = dup || dist(o, c) <= 1e-14 * (1.0 + norm2(c));
    if (!dup) out.push_back(c);
  }
  return out;
}

}  // namespace

double VectorSet::distance(const Vec& x) const { return dist(nearest_points(x).front(), x); }

Vec VectorSet::project(const Vec& x) const {
  auto pts = nearest_points(x);
  if (pts.size() != 1) throw AmbiguityError(name() + ": projection is not unique");
  return pts.front();
}

// ---------------------------------------------------------------------------

PolyhedralSet::PolyhedralSet(HPolyhedron q, std::string name, SymmetryMode sym)
    : q_(std::move(q)), name_(std::move(name)), sym_(sym) {
  auto v = incidence_vrep(q_);
  if (v.points.empty()) throw InputError(name_ + ": empty set");
  for (const auto& face : enumerate_faces(v, q_.a.size())) {
    FaceProjector fp;
    fp.base = v.points[face.points.front()];
    for (std::size_t k = 0; k < q_.a.size(); ++k) {
      if (!face.tight.test(k)) continue;
      auto trial = fp.basis;
      trial.push_back(q_.a[k]);
      if (rank(trial, q_.n) == trial.size()) fp.basis = std::move(trial);
    }
    const std::size_t m = fp.basis.size();
    if (m > 0) {
      // Gram inverse by solving against the identity
      std::vector<QVec> gram(m, QVec(m));
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) gram[i][j] = dot(fp.basis[i], fp.basis[j]);
      fp.inv_gram.assign(m, QVec(m));
      for (std::size_t j = 0; j < m; ++j) {
        QVec e(m, Rational(0));
        e[j] = 1;
        auto col = solve(gram, e, m);
        if (!col) throw Error("singular Gram matrix");
        for (std::size_t i = 0; i < m; ++i) fp.inv_gram[i][j] = (*col)[i];
      }
    }
    for (const auto& b : fp.basis) fp.basis_f.push_back(to_double(b));
    for (const auto& r : fp.inv_gram) fp.inv_gram_f.push_back(to_double(r));
    fp.base_f = to_double(fp.base);
    faces_.push_back(std::move(fp));
  }
}

bool PolyhedralSet::contains(const Vec& x, double tol) const {
  check_dim(x, q_.n);
  for (std::size_t i = 0; i < q_.a.size(); ++i) {
    double lhs = 0.0;
    for (std::size_t k = 0; k < q_.n; ++k) lhs += q_.a[i][k].get_d() * x[k];
    if (lhs > q_.b[i].get_d() + tol) return false;
  }
  return true;
}

QVec PolyhedralSet::project_face(const FaceProjector& fp, const QVec& x) const {
  const std::size_t m = fp.basis.size();
  if (m == 0) return x;
  QVec diff = sub(x, fp.base);
  QVec r(m);
  for (std::size_t i = 0; i < m; ++i) r[i] = dot(fp.basis[i], diff);
  QVec out = x;
  for (std::size_t i = 0; i < m; ++i) {
    Rational c = 0;
    for (std::size_t j = 0; j < m; ++j) c += fp.inv_gram[i][j] * r[j];
    if (sgn(c) == 0) continue;
    for (std::size_t k = 0; k < q_.n; ++k)
      if (sgn(fp.basis[i][k]) != 0) out[k] -= c * fp.basis[i][k];
  }
  return out;
}

Vec PolyhedralSet::project_face_float(const FaceProjector& fp, const Vec& x) const {
  const std::size_t m = fp.basis_f.size();
  Vec out = x;
  if (m == 0) return out;
  Vec r(m, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < q_.n; ++k) r[i] += fp.basis_f[i][k] * (x[k] - fp.base_f[k]);
  for (std::size_t i = 0; i < m; ++i) {
    double c = 0.0;
    for (std::size_t j = 0; j < m; ++j) c += fp.inv_gram_f[i][j] * r[j];
    for (std::size_t k = 0; k < q_.n; ++k) out[k] -= c * fp.basis_f[i][k];
  }
  return out;
}

QVec PolyhedralSet::project_exact(const QVec& x) const {
  // float screening picks the candidate faces; the winner is decided exactly
  Vec xf = to_double(x);
  double scale = 1.0 + norm2(xf);
  for (const auto& b : q_.b) scale += std::abs(b.get_d());
  std::vector<double> d(faces_.size(), INFINITY);
  double best = INFINITY;
  for (std::size_t f = 0; f < faces_.size(); ++f) {
    Vec p = project_face_float(faces_[f], xf);
    if (!contains(p, 1e-9 * scale)) continue;
    d[f] = dist(p, xf);
    best = std::min(best, d[f]);
  }
  auto exact_pass = [&](bool screened) -> std::optional<QVec> {
    std::optional<QVec> winner;
    Rational wd;
    for (std::size_t f = 0; f < faces_.size(); ++f) {
      if (screened && !(d[f] <= best + 1e-7 * scale)) continue;
      QVec p = project_face(faces_[f], x);
      if (!q_.contains(p)) continue;
      QVec diff = sub(p, x);
      Rational dd = dot(diff, diff);
      if (!winner || dd < wd) {
        winner = std::move(p);
        wd = dd;
      }
    }
    return winner;
  };
  auto w = exact_pass(true);
  if (!w) w = exact_pass(false);
  if (!w) throw Error(name_ + ": projection failed");
  return *w;
}

std::vector<Vec> PolyhedralSet::nearest_points(const Vec& x) const {
  check_dim(x, q_.n);
  return {to_double(project_exact(exact(x)))};
}

std::shared_ptr<PolyhedralSet> nonpositive_orthant(std::size_t n) {
  HPolyhedron h;
  h.n = n;
  for (std::size_t i = 0; i < n; ++i) {
    QVec r(n, Rational(0));
    r[i] = 1;
    h.a.push_back(r);
    h.b.push_back(0);
  }
  return std::make_shared<PolyhedralSet>(std::move(h), "nonpositive_orthant", SymmetryMode::permutation);
}

std::shared_ptr<PolyhedralSet> unit_box(std::size_t n) {
  HPolyhedron h;
  h.n = n;
  for (std::size_t i = 0; i < n; ++i) {
    for (int s : {1, -1}) {
      QVec r(n, Rational(0));
      r[i] = s;
      h.a.push_back(r);
      h.b.push_back(1);
    }
  }
  return std::make_shared<PolyhedralSet>(std::move(h), "unit_box", SymmetryMode::signed_perm);
}

std::shared_ptr<PolyhedralSet> sum_halfspace(std::size_t n) {
  HPolyhedron h;
  h.n = n;
  h.a.push_back(QVec(n, Rational(1)));
  h.b.push_back(1);
  return std::make_shared<PolyhedralSet>(std::move(h), "sum_halfspace", SymmetryMode::permutation);
}

std::shared_ptr<PolyhedralSet> diagonal_line(std::size_t n) {
  HPolyhedron h;
  h.n = n;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (int s : {1, -1}) {
      QVec r(n, Rational(0));
      r[i] = s;
      r[i + 1] = -s;
      h.a.push_back(r);
      h.b.push_back(0);
    }
  }
  return std::make_shared<PolyhedralSet>(std::move(h), "diagonal_line", SymmetryMode::permutation);
}

// ---------------------------------------------------------------------------

FiniteSet::FiniteSet(std::vector<Vec> points, std::string name, SymmetryMode sym)
    : points_(std::move(points)), name_(std::move(name)), sym_(sym) {
  if (points_.empty()) throw InputError("finite set needs at least one point");
}

bool FiniteSet::contains(const Vec& x, double tol) const {
  for (const auto& p : points_)
    if (dist(p, x) <= tol) return true;
  return false;
}

std::vector<Vec> FiniteSet::nearest_points(const Vec& x) const {
  check_dim(x, dim());
  double best = INFINITY;
  for (const auto& p : points_) best = std::min(best, dist(p, x));
  return within(points_, x, 1e-12 * (1.0 + best));
}

std::vector<Vec> FiniteSet::near_minimizers(const Vec& x, double slack) const {
  check_dim(x, dim());
  return within(points_, x, slack);
}

// ---------------------------------------------------------------------------

bool Sphere::contains(const Vec& x, double tol) const { return std::abs(norm2(x) - r_) <= tol; }

std::vector<Vec> Sphere::nearest_points(const Vec& x) const {
  check_dim(x, n_);
  double nx = norm2(x);
  if (nx <= 1e-14) {
    // every point is nearest; report the signed coordinate vectors
    std::vector<Vec> out;
    for (std::size_t i = 0; i < n_; ++i) {
      for (double s : {r_, -r_}) {
        Vec e(n_, 0.0);
        e[i] = s;
        out.push_back(e);
      }
    }
    return out;
  }
  Vec p = x;
  for (double& v : p) v *= r_ / nx;
  return {p};
}

std::vector<Vec> Sphere::near_minimizers(const Vec& x, double slack) const {
  check_dim(x, n_);
  // the only local minimizer of the distance is r x/|x|, unless x is so
  // close to the centre that the whole sphere is within slack
  if (2.0 * norm2(x) <= slack) return nearest_points(Vec(n_, 0.0));
  return nearest_points(x);
}

// ---------------------------------------------------------------------------

bool SparsitySet::contains(const Vec& x, double tol) const {
  std::size_t nz = 0;
  for (double v : x)
    if (std::abs(v) > tol) ++nz;
  return nz <= k_;
}

namespace {

// all projections of x onto coordinate subspaces with |support| = k
std::vector<Vec> support_projections(const Vec& x, std::size_t k) {
  const std::size_t n = x.size();
  std::vector<Vec> out;
  std::vector<bool> mask(n, false);
  std::fill(mask.begin(), mask.begin() + static_cast<long>(std::min(k, n)), true);
  std::sort(mask.begin(), mask.end());
  do {
    Vec p(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      if (mask[i]) p[i] = x[i];
    out.push_back(p);
  } while (std::next_permutation(mask.begin(), mask.end()));
  return out;
}

}  // namespace

std::vector<Vec> SparsitySet::nearest_points(const Vec& x) const {
  check_dim(x, n_);
  auto c = support_projections(x, k_);
  double best = INFINITY;
  for (const auto& p : c) best = std::min(best, dist(p, x));
  return within(c, x, 1e-12 * (1.0 + best));
}

std::vector<Vec> SparsitySet::near_minimizers(const Vec& x, double slack) const {
  check_dim(x, n_);
  return within(support_projections(x, k_), x, slack);
}

}  // namespace spectral
