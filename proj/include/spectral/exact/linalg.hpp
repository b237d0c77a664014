#pragma once
// Exact linear algebra on small dense rational systems.

#include <optional>
#include <vector>

#include "spectral/exact/rational.hpp"

namespace spectral {

/// Reduced row echelon form; zero rows dropped. pivots (if given) receives
/// the pivot column of each returned row.
std::vector<QVec> rref(std::vector<QVec> rows, std::size_t ncols,
                       std::vector<std::size_t>* pivots = nullptr);
std::size_t rank(const std::vector<QVec>& rows, std::size_t ncols);
/// Basis of {x : <r, x> = 0 for all rows r}.
std::vector<QVec> nullspace(const std::vector<QVec>& rows, std::size_t ncols);
/// Some solution of A x = b, or nullopt if inconsistent.
std::optional<QVec> solve(const std::vector<QVec>& a, const QVec& b, std::size_t ncols);

/// base + span(basis); basis is kept in reduced row echelon form so two
/// equal subspaces have identical bases.
struct AffineSpace {
  QVec base;
  std::vector<QVec> basis;

  static AffineSpace from_generators(const QVec& base, const std::vector<QVec>& directions);
  std::size_t ambient() const { return base.size(); }
  std::size_t dim() const { return basis.size(); }
  bool in_parallel(const QVec& d) const;
  bool contains(const QVec& x) const;
  /// Orthogonal projection.
  QVec project(const QVec& x) const;
  /// Basis of the orthogonal complement of the parallel subspace.
  std::vector<QVec> complement() const;
  bool same_parallel(const AffineSpace& other) const { return basis == other.basis; }
  friend bool operator==(const AffineSpace& a, const AffineSpace& b) {
    return a.basis == b.basis && a.contains(b.base);
  }
};

/// Orthogonal projection of x onto the span of `span` (any spanning set).
QVec project_onto_span(const std::vector<QVec>& span, const QVec& x);

}  // namespace spectral
