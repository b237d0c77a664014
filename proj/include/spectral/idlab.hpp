#pragma once
// Numerical probes for the variational claims: Moreau gradient, projection
// derivatives, prox-regularity, identifiability, partial smoothness,
// proximal identification runs and a grid-based conjugate.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "spectral/lift.hpp"
#include "spectral/vector_sets.hpp"

namespace spectral {

/// pass iff measured <= threshold on every trial; the worst trial is kept.
struct ProbeReport {
  std::string name;
  bool pass = true;
  bool vacuous = false;  // precondition failed, nothing was tested
  Vec worst_input;
  double measured = 0.0;
  double threshold = 0.0;
  long trials = 0;
  std::uint64_t seed = 0;
  std::string detail;

  /// Records one trial, keeping the worst one.
  void record(const Vec& input, double value);
  /// Worst of the two, trials summed; name and threshold of *this kept.
  void merge(const ProbeReport& other);
};

// ---- metric projection -------------------------------------------------

/// Central differences of h = |x|^2/2 - d_Q(x)^2/2 against P_Q(x).
/// Throws AmbiguityError when P_Q(x) is not single-valued.
ProbeReport moreau_gradient_check(const VectorSet& q, const Vec& x, double step = 1e-4,
                                  double tol = 1e-5);
/// moreau_gradient_check at `trials` points drawn from N(0, scale^2 I).
ProbeReport moreau_gradient_probe(const VectorSet& q, int trials, std::uint64_t seed,
                                  double scale = 2.0, double step = 1e-4, double tol = 1e-5);

struct DirectionDefects {
  Vec direction;
  bool normal = false;      // true: normal direction, false: tangent direction
  std::vector<double> defects;  // one per step
};

/// One-sided difference quotients of P_Q at xbar in Q along sampled normal
/// and tangent directions (plus `extra` directions, classified exactly).
/// Each defect must be <= tol at the last step and nonincreasing over the
/// steps.
ProbeReport projection_derivative_check(const PolyhedralSet& q, const QVec& xbar, int samples,
                                        std::uint64_t seed,
                                        const std::vector<QVec>& extra = {},
                                        const std::vector<double>& steps = {1e-2, 1e-3, 1e-4},
                                        double tol = 1e-4,
                                        std::vector<DirectionDefects>* out = nullptr);

// ---- prox-regularity ---------------------------------------------------

inline constexpr double kMinimizerSlack = 1e-9;
inline constexpr double kMinimizerDiameter = 1e-7;

/// Samples y in the ball B_radius(xbar) (xbar itself first, then random
/// points, each followed by its projection onto the bisector of its two
/// best local minimizers when that stays in the ball) and measures the
/// diameter of the minimizers within 1e-9 of d_Q(y).
ProbeReport prox_regularity_probe(const VectorSet& q, const Vec& xbar, double radius, int trials,
                                  std::uint64_t seed);
/// The same experiment on lambda^{-1}(Q) at Diag(xbar): samples symmetric
/// Y, nearest points are U^T Diag(p) U over vector minimizers p and
/// permutations, U running over eigenbases of Y.
ProbeReport lifted_prox_regularity_probe(const VectorSet& q, const Vec& xbar, double radius,
                                         int trials, std::uint64_t seed);

// ---- identifiability ---------------------------------------------------

enum class SequenceGenerator { prox_path, random_neighbor, adversarial };
std::string to_string(SequenceGenerator g);
SequenceGenerator parse_generator(const std::string& s);

inline constexpr int kSequenceLength = 30;
inline constexpr int kMinTail = 10;

/// Sequences (x_i, v_i) -> (xbar, vbar) with v_i in df(x_i), checked for
/// eventual membership of x_i in the symmetric orbit of stratum `m`.
/// measured = largest tail index over the admissible sequences, threshold
/// = length - 10. Throws InputError unless vbar is in df(xbar) exactly.
ProbeReport identifiability_test(const MaxAffineFn& f, const Stratification& s, std::size_t m,
                                 const QVec& xbar, const QVec& vbar, SequenceGenerator gen,
                                 int trials, std::uint64_t seed);
/// The same with F = f o lambda at U^T Diag(xbar) U, V = U^T Diag(vbar) U,
/// U a seeded random rotation.
ProbeReport lifted_identifiability_test(const SpectralFn& f, std::size_t m, const QVec& xbar,
                                        const QVec& vbar, SequenceGenerator gen, int trials,
                                        std::uint64_t seed);

// ---- partial smoothness ------------------------------------------------

struct PartialSmoothness {
  bool smooth = false;      // (i)
  bool prox_regular = false;  // (ii)
  bool sharp = false;       // (iii)
  bool continuous = false;  // (iv)
  bool pass() const { return smooth && prox_regular && sharp && continuous; }
};

/// M is the affine set `m` near xbar (xbar in m). Conditions (i), (iii) and
/// (iv) are decided exactly; (ii) by prox_regularity_probe on epi f.
ProbeReport partial_smoothness_check(const MaxAffineFn& f, const AffineSpace& m, const QVec& xbar,
                                     PartialSmoothness* out = nullptr);
/// Stratum version; xbar must lie in the stratum.
ProbeReport partial_smoothness_check(const MaxAffineFn& f, const Stratification& s,
                                     std::size_t m, const QVec& xbar,
                                     PartialSmoothness* out = nullptr);

struct UniquenessVerdict {
  bool applicable = false;  // both manifolds passed partial_smoothness_check
  bool agree = false;
  int samples = 0;
  QVec witness;
};

/// Samples points of m1 and m2 within `radius` of xbar and compares
/// membership. Vacuous unless both are partly smooth at xbar.
UniquenessVerdict local_uniqueness_check(const MaxAffineFn& f, const AffineSpace& m1,
                                         const AffineSpace& m2, const QVec& xbar, double radius,
                                         int samples, std::uint64_t seed);

// ---- proximal identification ---------------------------------------------

struct TraceEntry {
  Matrix x;
  Vec lambda;
  std::string pattern;  // sign of each sorted eigenvalue, '|' between groups
  double value = 0.0;
};

struct IdentificationTrace {
  std::vector<TraceEntry> iterates;
  std::optional<std::size_t> identified_at;
  bool fixed_point = false;
  double t = 0.0;
  double grouping_tol = 0.0;
};

/// Sign/grouping pattern of a sorted vector at tol, e.g. "+|00".
std::string eigen_pattern(const Vec& lambda, double tol);

/// X_{k+1} = prox_{tF}(X_k) until max_iter steps or |X_{k+1} - X_k|_F <= 1e-12.
/// identified_at = first k from which every recorded pattern equals the
/// last one, provided at least 10 iterates follow or the run stopped at a
/// fixed point.
IdentificationTrace proximal_identification_run(const SpectralFn& f, const Matrix& x0, double t,
                                                int max_iter, double grouping_tol = -1);

// ---- conjugates of general functions ---------------------------------------

struct ConjugateGrid {
  double half_width = 4.0;
  int points = 81;        // per coordinate
  int refine_iters = 60;  // golden-section steps per coordinate sweep
  int sweeps = 4;
};

/// sup_x <x, y> - f(x) over the box [-w, w]^n by grid scan and coordinate
/// golden-section refinement. Throws InconclusiveError when the best grid
/// point lies on the box boundary.
double numeric_conjugate(const std::function<double(const Vec&)>& f, const Vec& y,
                         const ConjugateGrid& grid = {});

}  // namespace spectral
