#pragma once
// Subsets Q of R^n with a metric projection. The spectral layer lifts
// these to lambda^{-1}(Q) (or sigma^{-1}(Q)).

#include <memory>
#include <string>
#include <vector>

#include "spectral/polyfun.hpp"
#include "spectral/polyhedron.hpp"

namespace spectral {

class VectorSet {
 public:
  virtual ~VectorSet() = default;
  virtual std::size_t dim() const = 0;
  virtual std::string name() const = 0;
  virtual bool contains(const Vec& x, double tol) const = 0;
  virtual bool convex() const = 0;
  virtual SymmetryMode symmetry() const = 0;
  /// Distinct nearest points (at least one). Sets where a whole continuum
  /// is nearest return a spread of sample points from it.
  virtual std::vector<Vec> nearest_points(const Vec& x) const = 0;
  /// Points of Q within `slack` of the minimal distance, drawn from the
  /// local minimizers of the distance (a superset of nearest_points).
  virtual std::vector<Vec> near_minimizers(const Vec& x, double slack) const = 0;

  double distance(const Vec& x) const;
  /// Unique projection. Throws AmbiguityError when the nearest point is
  /// not unique.
  Vec project(const Vec& x) const;
};

/// {x : A x <= b} with exact data; projection computed exactly by
/// minimizing over the faces.
class PolyhedralSet : public VectorSet {
 public:
  PolyhedralSet(HPolyhedron q, std::string name, SymmetryMode sym);

  std::size_t dim() const override { return q_.n; }
  std::string name() const override { return name_; }
  bool contains(const Vec& x, double tol) const override;
  bool convex() const override { return true; }
  SymmetryMode symmetry() const override { return sym_; }
  std::vector<Vec> nearest_points(const Vec& x) const override;
  std::vector<Vec> near_minimizers(const Vec& x, double slack) const override {
    (void)slack;
    return nearest_points(x);
  }

  const HPolyhedron& inequalities() const { return q_; }
  /// Exact projection of a rational point.
  QVec project_exact(const QVec& x) const;
  GenPolyhedron tangent(const QVec& x) const { return tangent_cone(q_, x); }
  GenPolyhedron normal(const QVec& x) const { return normal_cone(q_, x); }

 private:
  struct FaceProjector {
    QVec base;                  // a point of the face's affine hull
    std::vector<QVec> basis;    // basis of the normal space (independent active rows)
    std::vector<QVec> inv_gram; // (B B^T)^{-1}
    std::vector<Vec> basis_f;
    std::vector<Vec> inv_gram_f;
    Vec base_f;
  };
  QVec project_face(const FaceProjector& fp, const QVec& x) const;
  Vec project_face_float(const FaceProjector& fp, const Vec& x) const;

  HPolyhedron q_;
  std::string name_;
  SymmetryMode sym_;
  std::vector<FaceProjector> faces_;
};

/// Finitely many points.
class FiniteSet : public VectorSet {
 public:
  FiniteSet(std::vector<Vec> points, std::string name, SymmetryMode sym = SymmetryMode::plain);
  std::size_t dim() const override { return points_.front().size(); }
  std::string name() const override { return name_; }
  bool contains(const Vec& x, double tol) const override;
  bool convex() const override { return points_.size() == 1; }
  SymmetryMode symmetry() const override { return sym_; }
  std::vector<Vec> nearest_points(const Vec& x) const override;
  std::vector<Vec> near_minimizers(const Vec& x, double slack) const override;

 private:
  std::vector<Vec> points_;
  std::string name_;
  SymmetryMode sym_;
};

/// Sphere of the given radius about the origin.
class Sphere : public VectorSet {
 public:
  Sphere(std::size_t n, double radius) : n_(n), r_(radius) {}
  std::size_t dim() const override { return n_; }
  std::string name() const override { return "sphere"; }
  bool contains(const Vec& x, double tol) const override;
  bool convex() const override { return false; }
  SymmetryMode symmetry() const override { return SymmetryMode::signed_perm; }
  std::vector<Vec> nearest_points(const Vec& x) const override;
  std::vector<Vec> near_minimizers(const Vec& x, double slack) const override;

 private:
  std::size_t n_;
  double r_;
};

/// Vectors with at most k nonzero entries (lifts to rank <= k).
class SparsitySet : public VectorSet {
 public:
  SparsitySet(std::size_t n, std::size_t k) : n_(n), k_(k) {}
  std::size_t dim() const override { return n_; }
  std::string name() const override { return "sparsity" + std::to_string(k_); }
  bool contains(const Vec& x, double tol) const override;
  bool convex() const override { return k_ >= n_; }
  SymmetryMode symmetry() const override { return SymmetryMode::signed_perm; }
  std::vector<Vec> nearest_points(const Vec& x) const override;
  std::vector<Vec> near_minimizers(const Vec& x, double slack) const override;

 private:
  std::size_t n_, k_;
};

/// Shipped fixtures.
std::shared_ptr<PolyhedralSet> nonpositive_orthant(std::size_t n);
std::shared_ptr<PolyhedralSet> unit_box(std::size_t n);
/// {x : sum x_i <= 1}
std::shared_ptr<PolyhedralSet> sum_halfspace(std::size_t n);
/// {x : x_i = x_j for all i, j} (the diagonal line)
std::shared_ptr<PolyhedralSet> diagonal_line(std::size_t n);

}  // namespace spectral
