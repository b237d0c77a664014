#include "spectral/polyhedron.hpp"

#include <algorithm>
#include <set>

#include "spectral/error.hpp"
#include "spectral/exact/cone.hpp"
#include "spectral/exact/lp.hpp"

namespace spectral {

namespace {

// Is v in conv(points) + cone(rays)? Empty `points` means cone only.
bool in_hull(const std::vector<QVec>& points, const std::vector<QVec>& rays, const QVec& v,
             bool has_points) {
  const std::size_t n = v.size();
  const std::size_t np = points.size(), nr = rays.size();
  if (has_points && np == 0) return false;
  if (np + nr == 0) return is_zero(v);
  LinearProgram lp(np + nr);
  for (std::size_t j = 0; j < np + nr; ++j) lp.set_nonneg(j);
  for (std::size_t i = 0; i < n; ++i) {
    QVec row(np + nr);
    for (std::size_t j = 0; j < np; ++j) row[j] = points[j][i];
    for (std::size_t j = 0; j < nr; ++j) row[np + j] = rays[j][i];
    lp.add(std::move(row), Sense::eq, v[i]);
  }
  if (has_points) {
    QVec row(np + nr, Rational(0));
    for (std::size_t j = 0; j < np; ++j) row[j] = 1;
    lp.add(std::move(row), Sense::eq, Rational(1));
  }
  return solve_lp(lp).status != LpStatus::infeasible;
}

void dedupe(std::vector<QVec>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

GenPolyhedron::GenPolyhedron(std::size_t n, std::vector<QVec> points, std::vector<QVec> rays)
    : n_(n), points_(std::move(points)), rays_(std::move(rays)) {
  for (const auto& p : points_)
    if (p.size() != n_) throw InputError("generator has wrong dimension");
  for (const auto& r : rays_)
    if (r.size() != n_) throw InputError("generator has wrong dimension");
}

GenPolyhedron GenPolyhedron::point(QVec p) {
  std::size_t n = p.size();
  return GenPolyhedron(n, {std::move(p)}, {});
}

GenPolyhedron GenPolyhedron::cone(std::size_t n, std::vector<QVec> rays) {
  return GenPolyhedron(n, {QVec(n, Rational(0))}, std::move(rays));
}

GenPolyhedron GenPolyhedron::from_inequalities(const std::vector<QVec>& a, const QVec& b, std::size_t n) {
  auto g = polyhedron_generators(a, b, n);
  std::vector<QVec> rays = std::move(g.rays);
  for (auto& l : g.lineality) {
    rays.push_back(scale(Rational(-1), l));
    rays.push_back(std::move(l));
  }
  return GenPolyhedron(n, std::move(g.points), std::move(rays));
}

GenPolyhedron GenPolyhedron::canonical() const {
  std::vector<QVec> pts = points_, rs;
  for (const auto& r : rays_)
    if (!is_zero(r)) rs.push_back(primitive(r));
  dedupe(pts);
  dedupe(rs);
  // rays first: a redundant ray is a nonnegative combination of the others
  for (std::size_t i = 0; i < rs.size();) {
    std::vector<QVec> others;
    for (std::size_t j = 0; j < rs.size(); ++j)
      if (j != i) others.push_back(rs[j]);
    if (in_hull({}, others, rs[i], false)) {
      rs.erase(rs.begin() + static_cast<long>(i));
    } else {
      ++i;
    }
  }
  for (std::size_t i = 0; i < pts.size() && pts.size() > 1;) {
    std::vector<QVec> others;
    for (std::size_t j = 0; j < pts.size(); ++j)
      if (j != i) others.push_back(pts[j]);
    if (in_hull(others, rs, pts[i], true)) {
      pts.erase(pts.begin() + static_cast<long>(i));
    } else {
      ++i;
    }
  }
  return GenPolyhedron(n_, std::move(pts), std::move(rs));
}

AffineSpace GenPolyhedron::affine_hull() const {
  if (empty()) throw Error("affine hull of an empty polyhedron");
  std::vector<QVec> dirs;
  for (std::size_t i = 1; i < points_.size(); ++i) dirs.push_back(sub(points_[i], points_[0]));
  for (const auto& r : rays_) dirs.push_back(r);
  return AffineSpace::from_generators(points_[0], dirs);
}

bool GenPolyhedron::contains(const QVec& v) const {
  if (v.size() != n_) throw InputError("point has wrong dimension");
  if (empty()) return false;
  return in_hull(points_, rays_, v, true);
}

bool GenPolyhedron::recession_contains(const QVec& d) const { return in_hull({}, rays_, d, false); }

bool GenPolyhedron::ri_contains(const QVec& v) const {
  if (v.size() != n_) throw InputError("point has wrong dimension");
  if (empty()) return false;
  // v = sum l_i p_i + sum m_j r_j, sum l = 1, all weights >= s; maximize s
  const std::size_t np = points_.size(), nr = rays_.size();
  const std::size_t s = np + nr;
  LinearProgram lp(s + 1);
  for (std::size_t j = 0; j < s; ++j) lp.set_nonneg(j);
  for (std::size_t i = 0; i < n_; ++i) {
    QVec row(s + 1, Rational(0));
    for (std::size_t j = 0; j < np; ++j) row[j] = points_[j][i];
    for (std::size_t j = 0; j < nr; ++j) row[np + j] = rays_[j][i];
    lp.add(std::move(row), Sense::eq, v[i]);
  }
  QVec sum(s + 1, Rational(0));
  for (std::size_t j = 0; j < np; ++j) sum[j] = 1;
  lp.add(std::move(sum), Sense::eq, Rational(1));
  for (std::size_t j = 0; j < s; ++j) {
    QVec row(s + 1, Rational(0));
    row[j] = -1;
    row[s] = 1;
    lp.add(std::move(row), Sense::le, Rational(0));
  }
  QVec cap(s + 1, Rational(0));
  cap[s] = 1;
  lp.add(cap, Sense::le, Rational(1));
  lp.objective = cap;
  auto res = solve_lp(lp);
  return res.status == LpStatus::optimal && sgn(res.value) > 0;
}

QVec GenPolyhedron::ri_point() const {
  if (empty()) throw Error("ri_point of an empty polyhedron");
  QVec c(n_, Rational(0));
  for (const auto& p : points_) c = add(c, p);
  c = scale(Rational(1, static_cast<unsigned long>(points_.size())), c);
  for (const auto& r : rays_) c = add(c, r);
  return c;
}

Rational GenPolyhedron::linf_distance(const QVec& v) const {
  if (empty()) throw Error("distance to an empty polyhedron");
  const std::size_t np = points_.size(), nr = rays_.size();
  const std::size_t s = np + nr;
  // variables: weights (nonneg), then the bound t; minimize t
  LinearProgram lp(s + 1);
  for (std::size_t j = 0; j <= s; ++j) lp.set_nonneg(j);
  for (std::size_t i = 0; i < n_; ++i) {
    QVec row(s + 1, Rational(0));
    for (std::size_t j = 0; j < np; ++j) row[j] = points_[j][i];
    for (std::size_t j = 0; j < nr; ++j) row[np + j] = rays_[j][i];
    QVec lo = row, hi = row;
    hi[s] = -1;  // comb - t <= v
    lo[s] = 1;   // comb + t >= v
    lp.add(std::move(hi), Sense::le, v[i]);
    lp.add(std::move(lo), Sense::ge, v[i]);
  }
  QVec sum(s + 1, Rational(0));
  for (std::size_t j = 0; j < np; ++j) sum[j] = 1;
  lp.add(std::move(sum), Sense::eq, Rational(1));
  lp.objective.assign(s + 1, Rational(0));
  lp.objective[s] = -1;
  auto res = solve_lp(lp);
  if (res.status != LpStatus::optimal) throw Error("distance LP failed");
  return -res.value;
}

bool GenPolyhedron::subset_of(const GenPolyhedron& other) const {
  if (empty()) return true;
  for (const auto& p : points_)
    if (!other.contains(p)) return false;
  for (const auto& r : rays_)
    if (!other.recession_contains(r)) return false;
  return true;
}

GenPolyhedron GenPolyhedron::linear_image(const std::vector<QVec>& m_rows) const {
  auto apply = [&](const QVec& x) {
    QVec y(m_rows.size());
    for (std::size_t i = 0; i < m_rows.size(); ++i) y[i] = dot(m_rows[i], x);
    return y;
  };
  std::vector<QVec> pts, rs;
  for (const auto& p : points_) pts.push_back(apply(p));
  for (const auto& r : rays_) rs.push_back(apply(r));
  return GenPolyhedron(m_rows.size(), std::move(pts), std::move(rs));
}

GenPolyhedron GenPolyhedron::translate(const QVec& t) const {
  std::vector<QVec> pts;
  for (const auto& p : points_) pts.push_back(add(p, t));
  return GenPolyhedron(n_, std::move(pts), rays_);
}

GenPolyhedron polar(const GenPolyhedron& k) {
  for (const auto& p : k.points())
    if (!is_zero(p)) throw InputError("polar expects a cone with apex at the origin");
  auto g = cone_generators(k.rays(), k.ambient());
  std::vector<QVec> rays = std::move(g.rays);
  for (auto& l : g.lineality) {
    rays.push_back(scale(Rational(-1), l));
    rays.push_back(std::move(l));
  }
  return GenPolyhedron::cone(k.ambient(), std::move(rays));
}

bool HPolyhedron::contains(const QVec& x) const {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (dot(a[i], x) > b[i]) return false;
  return true;
}

std::vector<std::size_t> HPolyhedron::active(const QVec& x) const {
  std::vector<std::size_t> act;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (dot(a[i], x) == b[i]) act.push_back(i);
  return act;
}

GenPolyhedron tangent_cone(const HPolyhedron& q, const QVec& x) {
  if (!q.contains(x)) throw InputError("tangent_cone: point outside the set");
  std::vector<QVec> rows;
  for (std::size_t i : q.active(x)) rows.push_back(q.a[i]);
  return polar(GenPolyhedron::cone(q.n, rows)).canonical();
}

GenPolyhedron normal_cone(const HPolyhedron& q, const QVec& x) {
  if (!q.contains(x)) throw InputError("normal_cone: point outside the set");
  std::vector<QVec> rows;
  for (std::size_t i : q.active(x)) rows.push_back(q.a[i]);
  GenPolyhedron n = GenPolyhedron::cone(q.n, rows).canonical();
  if (!(polar(tangent_cone(q, x)) == n)) throw Error("normal cone is not the polar of the tangent cone");
  return n;
}

}  // namespace spectral

namespace spectral {

IncidenceVRep incidence_vrep(const HPolyhedron& q) {
  auto g = polyhedron_generators(q.a, q.b, q.n);
  IncidenceVRep v;
  v.points = std::move(g.points);
  v.rays = std::move(g.rays);
  for (auto& l : g.lineality) {
    v.rays.push_back(scale(Rational(-1), l));
    v.rays.push_back(std::move(l));
  }
  auto incidence = [&](const QVec& z, bool homogeneous) {
    Bitset t(q.a.size());
    for (std::size_t i = 0; i < q.a.size(); ++i) {
      Rational lhs = dot(q.a[i], z);
      if (homogeneous ? sgn(lhs) == 0 : lhs == q.b[i]) t.set(i);
    }
    return t;
  };
  for (const auto& p : v.points) v.point_tight.push_back(incidence(p, false));
  for (const auto& r : v.rays) v.ray_tight.push_back(incidence(r, true));
  return v;
}

std::vector<FaceIncidence> enumerate_faces(const IncidenceVRep& v, std::size_t nrows) {
  auto close = [&](const std::vector<std::size_t>& pts, const std::vector<std::size_t>& rs) {
    Bitset t(nrows);
    bool first = true;
    for (std::size_t p : pts) {
      t = first ? v.point_tight[p] : (t & v.point_tight[p]);
      first = false;
    }
    for (std::size_t r : rs) t = t & v.ray_tight[r];
    return t;
  };
  std::vector<FaceIncidence> faces;
  if (v.points.empty()) return faces;
  FaceIncidence root;
  for (std::size_t i = 0; i < v.points.size(); ++i) root.points.push_back(i);
  for (std::size_t i = 0; i < v.rays.size(); ++i) root.rays.push_back(i);
  root.tight = close(root.points, root.rays);
  std::set<Bitset> seen{root.tight};
  faces.push_back(std::move(root));
  // breadth first: adding one row to a face and closing gives every face
  // directly below it
  for (std::size_t fi = 0; fi < faces.size(); ++fi) {
    for (std::size_t k = 0; k < nrows; ++k) {
      if (faces[fi].tight.test(k)) continue;
      FaceIncidence child;
      for (std::size_t p : faces[fi].points)
        if (v.point_tight[p].test(k)) child.points.push_back(p);
      if (child.points.empty()) continue;
      for (std::size_t r : faces[fi].rays)
        if (v.ray_tight[r].test(k)) child.rays.push_back(r);
      child.tight = close(child.points, child.rays);
      if (!seen.insert(child.tight).second) continue;
      faces.push_back(std::move(child));
    }
  }
  return faces;
}

}  // namespace spectral
