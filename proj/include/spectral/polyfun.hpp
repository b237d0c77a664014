#pragma once
// Convex polyhedral functions f(x) = max_i <a_i, x> + b_i restricted to
// {x : <c_j, x> <= d_j}, with exact rational data.

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "spectral/exact/cone.hpp"
#include "spectral/polyhedron.hpp"
#include "spectral/symmetry.hpp"

namespace spectral {

enum class SymmetryMode { plain, permutation, signed_perm };

/// nullopt stands for +infinity
using ExtRational = std::optional<Rational>;

std::string to_string(const ExtRational& v);
std::string to_string(SymmetryMode m);
SymmetryMode parse_symmetry_mode(const std::string& s);

struct AffinePiece {
  QVec a;
  Rational b;
  friend bool operator<(const AffinePiece& x, const AffinePiece& y) {
    return x.a < y.a || (x.a == y.a && x.b < y.b);
  }
  friend bool operator==(const AffinePiece&, const AffinePiece&) = default;
};

struct DomainConstraint {
  QVec c;
  Rational d;
  friend bool operator<(const DomainConstraint& x, const DomainConstraint& y) {
    return x.c < y.c || (x.c == y.c && x.d < y.d);
  }
  friend bool operator==(const DomainConstraint&, const DomainConstraint&) = default;
};

/// Generators of epi f in (x, r) coordinates, with incidence against the
/// rows (pieces first, then constraints).
using EpiVRep = IncidenceVRep;

class MaxAffineFn {
 public:
  /// Closes pieces and constraints under the symmetry group, drops exact
  /// duplicates and checks that the domain is nonempty.
  static MaxAffineFn make(std::size_t n, std::vector<AffinePiece> pieces,
                          std::vector<DomainConstraint> constraints, SymmetryMode mode,
                          std::string name = "");

  std::size_t dim() const { return n_; }
  const std::vector<AffinePiece>& pieces() const { return pieces_; }
  const std::vector<DomainConstraint>& constraints() const { return constraints_; }
  SymmetryMode mode() const { return mode_; }
  const std::string& name() const { return name_; }
  std::size_t rows() const { return pieces_.size() + constraints_.size(); }

  bool in_domain(const QVec& x) const;
  ExtRational value(const QVec& x) const;
  double value(const Vec& x) const;  // +inf outside the domain; float evaluation
  std::vector<std::size_t> active_pieces(const QVec& x) const;
  std::vector<std::size_t> active_constraints(const QVec& x) const;
  /// Rows tight at (x, f(x)); x must be in the domain.
  Bitset tight_rows(const QVec& x) const;
  HPolyhedron domain() const;
  /// epi f as {(x, r)}: <a_i, x> - r <= -b_i, <c_j, x> <= d_j
  HPolyhedron epigraph_inequalities() const;

  /// Group under which f is invariant (generators only).
  std::vector<Permutation> symmetry_generators() const;

  const EpiVRep& epigraph() const;

 private:
  std::size_t n_ = 0;
  std::vector<AffinePiece> pieces_;
  std::vector<DomainConstraint> constraints_;
  SymmetryMode mode_ = SymmetryMode::plain;
  std::string name_;
  struct Cache {
    std::once_flag once;
    EpiVRep epi;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

/// conv{a_i : i active} + cone{c_j : j active}, canonical.
GenPolyhedron subdiff(const MaxAffineFn& f, const QVec& x);

struct Stratum {
  std::vector<std::size_t> pieces;       // I
  std::vector<std::size_t> constraints;  // J
  Bitset tight;                          // I and J as one row set
  std::size_t dim = 0;
  AffineSpace hull;
  QVec representative;
  GenPolyhedron closure;
  std::size_t orbit = 0;
  /// sigma with sigma(M_root) = M, where root is the first stratum of the orbit
  Permutation from_root;
};

struct Stratification {
  std::size_t n = 0;
  std::vector<Stratum> strata;
  /// (i, j) with i != j and M_i contained in cl M_j
  std::vector<std::pair<std::size_t, std::size_t>> closure_order;
  std::vector<std::vector<std::size_t>> orbits;

  std::optional<std::size_t> find(const Bitset& tight) const;
  /// Stratum containing x, or nullopt outside dom f.
  std::optional<std::size_t> locate(const MaxAffineFn& f, const QVec& x) const;
  bool in_closure(const MaxAffineFn& f, std::size_t j, const QVec& x) const;

 private:
  std::map<Bitset, std::size_t> index_;
  friend Stratification stratify(const MaxAffineFn& f);
};

/// Strata are the projections of the faces of epi f that lie in the graph.
/// Verifies the frontier condition and the symmetry orbits; throws Error
/// on failure.
Stratification stratify(const MaxAffineFn& f);

/// The frontier condition checked pair by pair from exact data.
bool verify_frontier(const MaxAffineFn& f, const Stratification& s);

/// ri of the subdifferential on stratum i.
RelOpen dual_map(const MaxAffineFn& f, const Stratification& s, std::size_t i);

ExtRational conjugate_value(const MaxAffineFn& f, const QVec& y);
/// dF*(y) = {x : y in df(x)}; empty when y is outside dom f*.
GenPolyhedron conjugate_subdiff(const MaxAffineFn& f, const QVec& y);

struct ConjugateStratification {
  std::vector<RelOpen> strata;  // strata[i] = J_f(M_i)
  std::vector<std::size_t> dims;
  std::vector<QVec> representatives;
  /// dual index -> primal index (J_{f*} image), identity when certified
  std::vector<std::size_t> inverse;
  bool certified = false;
};

ConjugateStratification conjugate_stratification(const MaxAffineFn& f, const Stratification& s);

struct FenchelYoungResult {
  ExtRational fx, fstar;
  Rational pairing;
  bool inequality = false;
  bool equality = false;
  bool subgradient = false;
  bool pass = false;  // inequality holds and equality <=> subgradient
};
FenchelYoungResult fenchel_young_check(const MaxAffineFn& f, const QVec& x, const QVec& y);

struct BiconjugateResult {
  ExtRational value, biconjugate;
  QVec y_star;
  bool strong_duality = false;
  bool pass = false;
};
/// f**(x) = max over mu in simplex, nu >= 0 of
/// sum mu_i (<a_i,x> + b_i) + sum nu_j (<c_j,x> - d_j); the maximizer
/// gives y* = sum mu_i a_i + sum nu_j c_j, and <x,y*> - f*(y*) is
/// recomputed with the primal conjugate LP as a duality check.
BiconjugateResult biconjugate_check(const MaxAffineFn& f, const QVec& x);

}  // namespace spectral
