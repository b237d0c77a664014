#pragma once
// Spectral functions F = f o lambda (and f o sigma for rectangular
// matrices) built on exact polyhedral f.

#include <memory>
#include <optional>
#include <vector>

#include "spectral/matdecomp.hpp"
#include "spectral/polyfun.hpp"
#include "spectral/vector_sets.hpp"

namespace spectral {

enum class SpectralKind { eigenvalue, singular };

class SpectralFn {
 public:
  /// Eigenvalue kind needs a permutation (or signed) invariant f; singular
  /// kind needs a signed invariant f. Throws InputError otherwise.
  SpectralFn(MaxAffineFn base, SpectralKind kind);

  const MaxAffineFn& base() const { return base_; }
  SpectralKind kind() const { return kind_; }
  std::size_t dim() const { return base_.dim(); }
  /// Stratification of the base function, computed on first use.
  const Stratification& strata() const;

 private:
  MaxAffineFn base_;
  SpectralKind kind_;
  struct Cache {
    std::once_flag once;
    Stratification strat;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

/// Eigenvalues of X as rationals: blocks grouped at grouping_tol are made
/// exactly equal and each value is snapped to the simplest nearby rational
/// (denominator <= 1e6), else kept as its exact binary value.
QVec rational_spectrum(const EigenPair& e, double grouping_tol);

/// Negative grouping_tol selects default_grouping_tol(X).
double spectral_value(const SpectralFn& f, const Matrix& x, double grouping_tol = -1);

struct SpectralSubdiffCert {
  EigenPair eig;
  QVec lambda;  // rational spectrum
  Partition blocks;
  GenPolyhedron vec_subdiff;
  double grouping_tol = 0;
};

SpectralSubdiffCert spectral_subdiff(const SpectralFn& f, const Matrix& x, double grouping_tol = -1);

enum class SubdiffTest { member, ri, rb, aff };

/// V commutes with X (within tol) and its block-diagonal form in the
/// eigenbasis of X has a diagonal passing the requested test against
/// df(lambda(X)). Within a block of equal eigenvalues the diagonal is read
/// off as the eigenvalues of that block of V.
bool spectral_subdiff_membership(const SpectralSubdiffCert& cert, const Matrix& v, double tol);
bool spectral_ri_aff_rb(const SpectralSubdiffCert& cert, SubdiffTest which, const Matrix& v, double tol);
/// The aligned diagonal vector used by the tests above, or nullopt if V
/// fails the commutation/block test.
std::optional<Vec> aligned_diagonal(const SpectralSubdiffCert& cert, const Matrix& v, double tol);

double spectral_distance(const VectorSet& q, const Matrix& x);
/// U^T Diag(P_Q(lambda(X))) U with U from eig_sym(X). Throws
/// AmbiguityError if the vector projection is not unique.
Matrix spectral_project(const VectorSet& q, const Matrix& x);

/// Exact prox of t f at a rational point: on each stratum M the candidate
/// is the projection of x - t a_i onto aff M; the one satisfying the
/// optimality condition is returned.
QVec vector_prox(const MaxAffineFn& f, const Stratification& s, const Rational& t, const QVec& x);
/// U^T Diag(prox_{tf}(lambda(X))) U. With verify set, checks
/// (X - result)/t in dF(result) and throws Error on failure.
Matrix spectral_prox(const SpectralFn& f, double t, const Matrix& x, bool verify = false,
                     double grouping_tol = -1);

struct LiftedStratum {
  std::size_t orbit = 0;
  std::size_t member = 0;  // stratum used as representative of the orbit
  long base_dim = 0;
  Partition pattern;  // forced-equality partition of the member
  long dim_lifted = 0;
};

/// Indices i ~ j iff x_i = x_j everywhere on the relatively open set with
/// this affine hull and relative-interior point.
Partition forced_equalities(const AffineSpace& hull, const QVec& rep);
/// dim M + sum_{i<j} |I_i||I_j| for the forced-equality partition.
LiftedStratum lift_dim(const AffineSpace& hull, const QVec& rep);
LiftedStratum lift_dim(const Stratification& s, std::size_t orbit);

struct LiftedPair {
  LiftedStratum primal;
  LiftedStratum dual;  // lambda^{-1}(J_f(M^sym))
};

struct LiftedStratification {
  std::vector<LiftedPair> pairs;  // one per sym-orbit
  ConjugateStratification dual;
};

LiftedStratification lift_stratification(const SpectralFn& f);

/// Orbit index of the stratum containing lambda(X), or nullopt outside
/// the domain.
std::optional<std::size_t> lifted_primal_orbit(const SpectralFn& f, const Matrix& x, double grouping_tol = -1);
/// Orbit index o with lambda(Y) in J_f(M^sym) for the orbit o.
std::optional<std::size_t> lifted_dual_orbit(const SpectralFn& f, const Matrix& y, double grouping_tol = -1);
/// y in J_f(M) for some member M of the orbit (exact vector test).
std::optional<std::size_t> dual_orbit_of(const MaxAffineFn& f, const Stratification& s, const QVec& y);

// ---- singular values ------------------------------------------------------

QVec rational_singular_values(const SVDTriple& s, double grouping_tol);
/// Rectangular X with rows >= cols (pass the transpose otherwise).
double sing_value(const SpectralFn& f, const Matrix& x, double grouping_tol = -1);

struct SingSubdiffCert {
  SVDTriple svd;
  QVec sigma;
  Partition blocks;  // grouping of sigma
  GenPolyhedron vec_subdiff;
  double grouping_tol = 0;
};

SingSubdiffCert sing_subdiff(const SpectralFn& f, const Matrix& x, double grouping_tol = -1);
bool sing_subdiff_membership(const SingSubdiffCert& cert, const Matrix& g, double tol);
Matrix sing_project(const VectorSet& q, const Matrix& x);

}  // namespace spectral
