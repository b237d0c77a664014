#include "spectral/exact/lp.hpp"

#include <cstdlib>
#include <string>

#include "spectral/error.hpp"

namespace spectral {

long lp_pivot_budget() {
  if (const char* env = std::getenv("SPECTRAL_LP_PIVOT_BUDGET")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return v;
  }
  return 200000L;
}

namespace {

class Tableau {
 public:
  Tableau(std::size_t m, std::size_t ncols) : rows_(m, QVec(ncols + 1)), basis_(m), ncols_(ncols) {}

  QVec& row(std::size_t i) { return rows_[i]; }
  std::size_t m() const { return rows_.size(); }
  std::size_t ncols() const { return ncols_; }
  std::vector<std::size_t>& basis() { return basis_; }
  Rational& rhs(std::size_t i) { return rows_[i][ncols_]; }

  void pivot(std::size_t r, std::size_t c, QVec& obj) {
    if (++pivots_ > lp_pivot_budget()) throw BudgetExceeded("LP pivot budget exceeded");
    QVec& pr = rows_[r];
    Rational inv = Rational(1) / pr[c];
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j <= ncols_; ++j) {
      if (sgn(pr[j]) != 0) {
        pr[j] *= inv;
        nz.push_back(j);
      }
    }
    auto eliminate = [&](QVec& row) {
      if (sgn(row[c]) == 0) return;
      Rational f = row[c];
      for (std::size_t j : nz) row[j] -= f * pr[j];
    };
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (i != r) eliminate(rows_[i]);
    eliminate(obj);
    basis_[r] = c;
  }

  // Maximize with reduced-cost row obj (obj[j] > 0 means improving).
  // Columns with allowed[j] == false never enter.
  LpStatus optimize(QVec& obj, const std::vector<bool>& allowed) {
    for (;;) {
      std::size_t enter = ncols_;
      for (std::size_t j = 0; j < ncols_; ++j) {
        if (allowed[j] && sgn(obj[j]) > 0) {
          enter = j;
          break;
        }
      }
      if (enter == ncols_) return LpStatus::optimal;
      std::size_t leave = m();
      Rational best;
      for (std::size_t i = 0; i < m(); ++i) {
        if (sgn(rows_[i][enter]) <= 0) continue;
        Rational ratio = rows_[i][ncols_] / rows_[i][enter];
        if (leave == m() || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == m()) return LpStatus::unbounded;
      pivot(leave, enter, obj);
    }
  }

  void erase_row(std::size_t i) {
    rows_.erase(rows_.begin() + static_cast<long>(i));
    basis_.erase(basis_.begin() + static_cast<long>(i));
  }

  long pivots() const { return pivots_; }

 private:
  std::vector<QVec> rows_;
  std::vector<std::size_t> basis_;
  std::size_t ncols_;
  long pivots_ = 0;
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
  const std::size_t n = lp.nvars;
  for (const auto& r : lp.rows)
    if (r.a.size() != n) throw InputError("LP row has wrong length");
  if (!lp.objective.empty() && lp.objective.size() != n) throw InputError("LP objective has wrong length");

  // column layout: structural (x+ and, for free vars, x-), slacks, artificials
  std::vector<std::size_t> pos_col(n), neg_col(n, SIZE_MAX);
  std::size_t nc = 0;
  for (std::size_t j = 0; j < n; ++j) {
    pos_col[j] = nc++;
    bool nn = !lp.nonneg.empty() && lp.nonneg[j];
    if (!nn) neg_col[j] = nc++;
  }
  const std::size_t nstruct = nc;
  const std::size_t m = lp.rows.size();
  std::vector<std::size_t> slack_col(m, SIZE_MAX);
  for (std::size_t i = 0; i < m; ++i)
    if (lp.rows[i].sense != Sense::eq) slack_col[i] = nc++;
  // decide which rows need an artificial
  std::vector<int> row_sign(m, 1);
  std::vector<bool> needs_art(m, true);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& r = lp.rows[i];
    if (sgn(r.b) < 0) row_sign[i] = -1;
    // slack coefficient after sign fix: +1 for (le,+) or (ge,-)
    int slack_coef = r.sense == Sense::le ? 1 : (r.sense == Sense::ge ? -1 : 0);
    if (slack_coef * row_sign[i] == 1) needs_art[i] = false;
  }
  std::vector<std::size_t> art_col(m, SIZE_MAX);
  for (std::size_t i = 0; i < m; ++i)
    if (needs_art[i]) art_col[i] = nc++;

  Tableau t(m, nc);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& r = lp.rows[i];
    QVec& row = t.row(i);
    Rational s = row_sign[i];
    for (std::size_t j = 0; j < n; ++j) {
      if (sgn(r.a[j]) == 0) continue;
      row[pos_col[j]] = s * r.a[j];
      if (neg_col[j] != SIZE_MAX) row[neg_col[j]] = -s * r.a[j];
    }
    if (slack_col[i] != SIZE_MAX) row[slack_col[i]] = s * (r.sense == Sense::le ? 1 : -1);
    if (art_col[i] != SIZE_MAX) {
      row[art_col[i]] = 1;
      t.basis()[i] = art_col[i];
    } else {
      t.basis()[i] = slack_col[i];
    }
    t.rhs(i) = s * r.b;
  }

  std::vector<bool> is_art(nc, false);
  for (std::size_t i = 0; i < m; ++i)
    if (art_col[i] != SIZE_MAX) is_art[art_col[i]] = true;

  LpResult result;
  // phase 1: maximize -sum(artificials)
  bool any_art = false;
  for (bool b : is_art) any_art = any_art || b;
  if (any_art) {
    QVec obj(nc + 1);
    for (std::size_t i = 0; i < m; ++i) {
      if (art_col[i] == SIZE_MAX) continue;
      for (std::size_t j = 0; j <= nc; ++j)
        if (!is_art[j] || j == nc) obj[j] += t.row(i)[j];
    }
    // obj holds reduced costs; obj[nc] = sum of artificial values
    std::vector<bool> allowed(nc, true);
    t.optimize(obj, allowed);
    if (sgn(obj[nc]) != 0) {
      result.status = LpStatus::infeasible;
      result.pivots = t.pivots();
      return result;
    }
    // drive remaining artificials out of the basis
    for (std::size_t i = 0; i < t.m();) {
      if (!is_art[t.basis()[i]]) {
        ++i;
        continue;
      }
      std::size_t c = nc;
      for (std::size_t j = 0; j < nc; ++j) {
        if (!is_art[j] && sgn(t.row(i)[j]) != 0) {
          c = j;
          break;
        }
      }
      if (c == nc) {
        t.erase_row(i);  // redundant equality
      } else {
        t.pivot(i, c, obj);
        ++i;
      }
    }
  }

  // phase 2
  QVec cost(nc + 1);
  if (!lp.objective.empty()) {
    for (std::size_t j = 0; j < n; ++j) {
      cost[pos_col[j]] = lp.objective[j];
      if (neg_col[j] != SIZE_MAX) cost[neg_col[j]] = -lp.objective[j];
    }
  }
  QVec obj = cost;
  for (std::size_t i = 0; i < t.m(); ++i) {
    const Rational& cb = cost[t.basis()[i]];
    if (sgn(cb) == 0) continue;
    for (std::size_t j = 0; j <= nc; ++j)
      if (sgn(t.row(i)[j]) != 0) obj[j] -= cb * t.row(i)[j];
  }
  std::vector<bool> allowed(nc, true);
  for (std::size_t j = 0; j < nc; ++j)
    if (is_art[j]) allowed[j] = false;
  LpStatus st = t.optimize(obj, allowed);
  result.status = st;
  result.pivots = t.pivots();
  QVec col_value(nc, Rational(0));
  for (std::size_t i = 0; i < t.m(); ++i) col_value[t.basis()[i]] = t.rhs(i);
  result.x.assign(n, Rational(0));
  for (std::size_t j = 0; j < n; ++j) {
    result.x[j] = col_value[pos_col[j]];
    if (neg_col[j] != SIZE_MAX) result.x[j] -= col_value[neg_col[j]];
  }
  if (st == LpStatus::optimal) result.value = -obj[nc];
  (void)nstruct;
  return result;
}

}  // namespace spectral
