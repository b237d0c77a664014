#include <gtest/gtest.h>

#include <cstdlib>
#include <random>

#include "spectral/error.hpp"
#include "spectral/exact/cone.hpp"
#include "spectral/exact/linalg.hpp"
#include "spectral/exact/lp.hpp"
#include "spectral/exact/rational.hpp"

using namespace spectral;

TEST(Rational, Parse) {
  EXPECT_EQ(parse_rational("3/4"), Rational(3, 4));
  EXPECT_EQ(parse_rational("-6/8"), Rational(-3, 4));
  EXPECT_EQ(parse_rational("0.125"), Rational(1, 8));
  EXPECT_EQ(parse_rational("-1.5e2"), Rational(-150));
  EXPECT_EQ(parse_rational("2.5E-1"), Rational(1, 4));
  EXPECT_EQ(parse_rational(" 7 "), Rational(7));
  for (const char* bad : {"", "1/0", "abc", "1/-2", "1.2.3", "--1", "3/"})
    EXPECT_THROW(parse_rational(bad), InputError) << bad;
}

TEST(Rational, SimplestBetween) {
  EXPECT_EQ(simplest_between(Rational(-1), Rational(1)), 0);
  EXPECT_EQ(simplest_between(Rational(3, 10), Rational(4, 10)), Rational(1, 3));
  EXPECT_EQ(simplest_between(Rational(-4, 10), Rational(-3, 10)), Rational(-1, 3));
  EXPECT_EQ(simplest_between(Rational(2), Rational(5, 2)), 2);
}

TEST(Rational, Snap) {
  EXPECT_EQ(*snap(0.3333333333, 1e-8), Rational(1, 3));
  EXPECT_EQ(*snap(1.0 - 1e-13, 1e-12), Rational(1));
  EXPECT_FALSE(snap(0.1234567891234, 1e-15).has_value());
  QVec g = snap_grouped(Vec{0.5 + 1e-12, 0.5 - 1e-12, -2.0}, 1e-9);
  EXPECT_EQ(g, (QVec{Rational(1, 2), Rational(1, 2), Rational(-2)}));
}

TEST(Rational, ExactIsLossless) {
  EXPECT_EQ(exact(0.1).get_d(), 0.1);
  EXPECT_NE(exact(0.1), Rational(1, 10));
  EXPECT_THROW(exact(std::numeric_limits<double>::infinity()), InputError);
}

TEST(Rational, Primitive) {
  EXPECT_EQ(primitive(QVec{Rational(1, 2), Rational(-3, 4)}), (QVec{2, -3}));
  EXPECT_EQ(primitive(QVec{0, 0}), (QVec{0, 0}));
}

TEST(Linalg, RrefRankNullspace) {
  std::vector<QVec> a{{1, 2, 3}, {2, 4, 6}, {1, 0, 1}};
  EXPECT_EQ(rank(a, 3), 2u);
  auto ns = nullspace(a, 3);
  ASSERT_EQ(ns.size(), 1u);
  for (const auto& r : a) EXPECT_EQ(dot(r, ns[0]), 0);
  auto x = solve(a, QVec{4, 8, 2}, 3);
  ASSERT_TRUE(x.has_value());
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(dot(a[i], *x), (QVec{4, 8, 2})[i]);
  EXPECT_FALSE(solve(a, QVec{4, 9, 2}, 3).has_value());
}

TEST(Linalg, AffineSpace) {
  auto s = AffineSpace::from_generators(QVec{1, 0, 0}, {{1, 1, 0}, {2, 2, 0}});
  EXPECT_EQ(s.dim(), 1u);
  EXPECT_TRUE(s.contains(QVec{3, 2, 0}));
  EXPECT_FALSE(s.contains(QVec{3, 2, 1}));
  QVec p = s.project(QVec{0, 0, 5});
  EXPECT_TRUE(s.contains(p));
  EXPECT_EQ(p, (QVec{Rational(1, 2), Rational(-1, 2), 0}));
  auto c = s.complement();
  EXPECT_EQ(c.size(), 2u);
  for (const auto& v : c) EXPECT_EQ(dot(v, s.basis[0]), 0);
  auto t = AffineSpace::from_generators(QVec{5, 4, 0}, {{-3, -3, 0}});
  EXPECT_TRUE(s == t);
}

TEST(Lp, OptimalInfeasibleUnbounded) {
  // max x + y  s.t. x + 2y <= 4, 3x + y <= 6, x, y >= 0  -> (8/5, 6/5), value 14/5
  LinearProgram lp;
  lp.nvars = 2;
  lp.set_nonneg(0);
  lp.set_nonneg(1);
  lp.add({1, 2}, Sense::le, 4);
  lp.add({3, 1}, Sense::le, 6);
  lp.objective = {1, 1};
  auto r = solve_lp(lp);
  ASSERT_EQ(r.status, LpStatus::optimal);
  EXPECT_EQ(r.value, Rational(14, 5));
  EXPECT_EQ(r.x, (QVec{Rational(8, 5), Rational(6, 5)}));

  LinearProgram bad = lp;
  bad.add({1, 1}, Sense::ge, 10);
  EXPECT_EQ(solve_lp(bad).status, LpStatus::infeasible);

  LinearProgram open;
  open.nvars = 2;
  open.add({1, -1}, Sense::le, 1);
  open.objective = {1, 1};
  EXPECT_EQ(solve_lp(open).status, LpStatus::unbounded);
}

TEST(Lp, FreeVariablesAndEqualities) {
  // min |x| style: max -t s.t. t >= x - 3, t >= 3 - x, x = 1 (free)
  LinearProgram lp;
  lp.nvars = 2;  // x, t
  lp.add({1, -1}, Sense::le, 3);
  lp.add({-1, -1}, Sense::le, -3);
  lp.add({1, 0}, Sense::eq, 1);
  lp.objective = {0, -1};
  auto r = solve_lp(lp);
  ASSERT_EQ(r.status, LpStatus::optimal);
  EXPECT_EQ(r.value, -2);
}

TEST(Lp, RandomDualityCheck) {
  // weak/strong duality oracle: max c.x, Ax <= b, x >= 0 vs min b.y, A^T y >= c, y >= 0
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> w(-3, 5);
  for (int t = 0; t < 30; ++t) {
    std::size_t m = 3, n = 3;
    std::vector<QVec> a(m, QVec(n));
    QVec b(m), c(n);
    for (auto& r : a)
      for (auto& v : r) v = w(rng);
    for (auto& v : b) v = std::abs(w(rng)) + 1;
    for (auto& v : c) v = w(rng);
    LinearProgram p;
    p.nvars = n;
    for (std::size_t j = 0; j < n; ++j) p.set_nonneg(j);
    for (std::size_t i = 0; i < m; ++i) p.add(a[i], Sense::le, b[i]);
    p.objective = c;
    LinearProgram d;
    d.nvars = m;
    for (std::size_t i = 0; i < m; ++i) d.set_nonneg(i);
    for (std::size_t j = 0; j < n; ++j) {
      QVec col(m);
      for (std::size_t i = 0; i < m; ++i) col[i] = -a[i][j];
      d.add(col, Sense::le, -c[j]);
    }
    QVec negb(m);
    for (std::size_t i = 0; i < m; ++i) negb[i] = -b[i];
    d.objective = negb;
    auto rp = solve_lp(p), rd = solve_lp(d);
    if (rp.status == LpStatus::optimal) {
      ASSERT_EQ(rd.status, LpStatus::optimal);
      EXPECT_EQ(rp.value, -rd.value);
    } else {
      EXPECT_EQ(rp.status, LpStatus::unbounded);
      EXPECT_EQ(rd.status, LpStatus::infeasible);
    }
  }
}

TEST(Lp, PivotBudget) {
  setenv("SPECTRAL_LP_PIVOT_BUDGET", "1", 1);
  LinearProgram lp;
  lp.nvars = 2;
  lp.set_nonneg(0);
  lp.set_nonneg(1);
  lp.add({1, 2}, Sense::le, 4);
  lp.add({3, 1}, Sense::le, 6);
  lp.objective = {1, 1};
  EXPECT_THROW(solve_lp(lp), BudgetExceeded);
  unsetenv("SPECTRAL_LP_PIVOT_BUDGET");
  EXPECT_NO_THROW(solve_lp(lp));
}

TEST(Cone, OrthantAndLineality) {
  // {y : y <= 0} in R^2 has rays -e1, -e2
  auto g = cone_generators({{1, 0}, {0, 1}}, 2);
  EXPECT_TRUE(g.lineality.empty());
  EXPECT_EQ(g.rays.size(), 2u);
  // {y : y1 <= 0} in R^2: lineality e2, ray -e1
  auto h = cone_generators({{1, 0}}, 2);
  EXPECT_EQ(h.lineality.size(), 1u);
  EXPECT_EQ(h.rays.size(), 1u);
}

TEST(Cone, RandomGeneratorsSatisfyAndSpan) {
  // Oracle: every generator satisfies the system, and each ray is extreme
  // (its tight rows have rank d - 1 - dim lineality).
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> w(-3, 3);
  for (int t = 0; t < 25; ++t) {
    std::size_t d = 3;
    std::vector<QVec> rows(5, QVec(d));
    for (auto& r : rows)
      for (auto& v : r) v = w(rng);
    auto g = cone_generators(rows, d);
    for (const auto& l : g.lineality)
      for (const auto& r : rows) EXPECT_EQ(dot(r, l), 0);
    for (const auto& ray : g.rays) {
      std::vector<QVec> tight;
      for (const auto& r : rows) {
        EXPECT_LE(dot(r, ray), 0);
        if (dot(r, ray) == 0) tight.push_back(r);
      }
      EXPECT_EQ(rank(tight, d), d - 1 - g.lineality.size());
    }
  }
}

TEST(Cone, PolyhedronGenerators) {
  // triangle x, y >= 0, x + y <= 1
  auto g = polyhedron_generators({{-1, 0}, {0, -1}, {1, 1}}, QVec{0, 0, 1}, 2);
  EXPECT_EQ(g.points.size(), 3u);
  EXPECT_TRUE(g.rays.empty());
  EXPECT_TRUE(g.lineality.empty());
}

TEST(Bitset, Ops) {
  Bitset a(80), b(80);
  a.set(1);
  a.set(70);
  b.set(70);
  EXPECT_TRUE(b.subset_of(a));
  EXPECT_FALSE(a.subset_of(b));
  EXPECT_EQ((a & b).count(), 1u);
  EXPECT_TRUE(a.test(70));
}
