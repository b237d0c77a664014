#pragma once
// Dense two-phase simplex over the rationals with Bland's rule.
// Intended for the small systems that arise from desk-scale polyhedra;
// it never cycles and its answers are exact.

#include <vector>

#include "spectral/exact/rational.hpp"

namespace spectral {

enum class Sense { le, eq, ge };
enum class LpStatus { optimal, infeasible, unbounded };

struct LinearProgram {
  std::size_t nvars = 0;
  /// Per-variable flag; default (empty) = every variable is free.
  std::vector<bool> nonneg;
  struct Row {
    QVec a;
    Sense sense;
    Rational b;
  };
  std::vector<Row> rows;
  /// Maximized. Empty = feasibility problem.
  QVec objective;

  explicit LinearProgram(std::size_t n = 0) : nvars(n) {}
  void add(QVec a, Sense s, Rational b) { rows.push_back({std::move(a), s, std::move(b)}); }
  void set_nonneg(std::size_t j) {
    if (nonneg.empty()) nonneg.assign(nvars, false);
    nonneg[j] = true;
  }
};

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  Rational value;
  QVec x;
  long pivots = 0;
};

/// Throws BudgetExceeded when the pivot count passes lp_pivot_budget().
LpResult solve_lp(const LinearProgram& lp);

/// SPECTRAL_LP_PIVOT_BUDGET, default 200000 pivots per LP.
long lp_pivot_budget();

}  // namespace spectral
