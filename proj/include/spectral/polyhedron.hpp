#pragma once
// Convex polyhedra in generator form: conv(points) + cone(rays).
// A lineality direction l is stored as the pair of rays l, -l.

#include <vector>

#include "spectral/exact/cone.hpp"
#include "spectral/exact/linalg.hpp"

namespace spectral {

class GenPolyhedron {
 public:
  GenPolyhedron() = default;
  explicit GenPolyhedron(std::size_t n) : n_(n) {}
  GenPolyhedron(std::size_t n, std::vector<QVec> points, std::vector<QVec> rays);

  static GenPolyhedron point(QVec p);
  /// cone(rays), i.e. the point 0 plus the rays
  static GenPolyhedron cone(std::size_t n, std::vector<QVec> rays);
  /// {x : A x <= b}
  static GenPolyhedron from_inequalities(const std::vector<QVec>& a, const QVec& b, std::size_t n);

  std::size_t ambient() const { return n_; }
  const std::vector<QVec>& points() const { return points_; }
  const std::vector<QVec>& rays() const { return rays_; }
  bool empty() const { return points_.empty(); }
  bool bounded() const { return rays_.empty(); }

  /// Drops duplicate and LP-redundant generators. Idempotent.
  GenPolyhedron canonical() const;

  AffineSpace affine_hull() const;
  std::size_t dim() const { return affine_hull().dim(); }

  bool contains(const QVec& v) const;
  bool ri_contains(const QVec& v) const;
  bool rb_contains(const QVec& v) const { return contains(v) && !ri_contains(v); }
  bool aff_contains(const QVec& v) const { return affine_hull().contains(v); }
  /// Average of the points plus the sum of the rays.
  QVec ri_point() const;
  /// d in the recession cone, i.e. d in cone(rays).
  bool recession_contains(const QVec& d) const;

  /// min over p in P of max_k |v_k - p_k|, exactly.
  Rational linf_distance(const QVec& v) const;

  bool subset_of(const GenPolyhedron& other) const;
  friend bool operator==(const GenPolyhedron& a, const GenPolyhedron& b) {
    return a.subset_of(b) && b.subset_of(a);
  }

  /// Image under x -> M x where M is given by its rows.
  GenPolyhedron linear_image(const std::vector<QVec>& m_rows) const;
  GenPolyhedron translate(const QVec& t) const;

 private:
  std::size_t n_ = 0;
  std::vector<QVec> points_;
  std::vector<QVec> rays_;
};

/// Polar cone {v : <v, w> <= 0 for all w in K}. K must be a cone
/// (its only point is the origin).
GenPolyhedron polar(const GenPolyhedron& k);

/// Relatively open set stored as its closure plus an open flag.
struct RelOpen {
  GenPolyhedron closure;
  bool open = true;
  bool contains(const QVec& v) const { return open ? closure.ri_contains(v) : closure.contains(v); }
  std::size_t dim() const { return closure.dim(); }
};

/// Polyhedral set in inequality form with exact data: {x : <a_i, x> <= b_i}.
struct HPolyhedron {
  std::size_t n = 0;
  std::vector<QVec> a;
  QVec b;

  bool contains(const QVec& x) const;
  std::vector<std::size_t> active(const QVec& x) const;
};

/// Generators of an inequality system with their incidence sets.
/// Lineality directions appear among the rays as +/- pairs.
struct IncidenceVRep {
  std::vector<QVec> points;
  std::vector<QVec> rays;
  std::vector<Bitset> point_tight;
  std::vector<Bitset> ray_tight;
};
IncidenceVRep incidence_vrep(const HPolyhedron& q);

/// A nonempty face: its tight row set and the generators lying in it.
struct FaceIncidence {
  Bitset tight;
  std::vector<std::size_t> points, rays;
};
/// All nonempty faces, the whole set first, each tight set closed.
std::vector<FaceIncidence> enumerate_faces(const IncidenceVRep& v, std::size_t nrows);

GenPolyhedron tangent_cone(const HPolyhedron& q, const QVec& x);
/// Also checks polar(tangent_cone) == normal_cone; throws Error if not.
GenPolyhedron normal_cone(const HPolyhedron& q, const QVec& x);

}  // namespace spectral
