#include <gtest/gtest.h>

#include <algorithm>

#include "spectral/error.hpp"
#include "spectral/polyfun.hpp"

using namespace spectral;

namespace {

MaxAffineFn l1(std::size_t n) {
  return MaxAffineFn::make(n, {{QVec(n, 1), 0}}, {}, SymmetryMode::signed_perm, "l1");
}
MaxAffineFn fmax(std::size_t n) {
  QVec e(n, 0);
  e[0] = 1;
  return MaxAffineFn::make(n, {{e, 0}}, {}, SymmetryMode::permutation, "max");
}
MaxAffineFn neg_orthant(std::size_t n) {
  QVec e(n, 0);
  e[0] = 1;
  return MaxAffineFn::make(n, {{QVec(n, 0), 0}}, {{e, 0}}, SymmetryMode::permutation, "orthant");
}

// Ordered set partitions of {1..n} (Fubini numbers) and nonempty subsets.
long count_nonempty_subsets(int n) { return (1L << n) - 1; }

}  // namespace

TEST(MaxAffine, ClosureAndValues) {
  auto f = l1(2);
  EXPECT_EQ(f.pieces().size(), 4u);
  EXPECT_EQ(*f.value(QVec{1, -2}), 3);
  EXPECT_EQ(*fmax(2).value(QVec{1, 1}), 1);
  EXPECT_FALSE(neg_orthant(2).value(QVec{1, 0}).has_value());
  EXPECT_EQ(f.value(Vec{0.5, -0.25}), 0.75);
}

TEST(MaxAffine, EmptyDomainRejected) {
  EXPECT_THROW(MaxAffineFn::make(1, {{QVec{0}, 0}}, {{QVec{1}, -1}, {QVec{-1}, -1}}, SymmetryMode::plain),
               InputError);
}

TEST(Subdiff, Examples) {
  EXPECT_TRUE(subdiff(fmax(2), QVec{1, 1}) == GenPolyhedron(2, {{1, 0}, {0, 1}}, {}));
  EXPECT_TRUE(subdiff(l1(2), QVec{2, 0}) == GenPolyhedron(2, {{1, 1}, {1, -1}}, {}));
  EXPECT_TRUE(subdiff(neg_orthant(2), QVec{0, 0}) == GenPolyhedron::cone(2, {{1, 0}, {0, 1}}));
}

TEST(Stratify, L1Plane) {
  auto f = l1(2);
  auto s = stratify(f);
  ASSERT_EQ(s.strata.size(), 9u);
  std::vector<std::size_t> dims;
  for (const auto& m : s.strata) dims.push_back(m.dim);
  EXPECT_EQ(std::count(dims.begin(), dims.end(), 0u), 1);
  EXPECT_EQ(std::count(dims.begin(), dims.end(), 1u), 4);
  EXPECT_EQ(std::count(dims.begin(), dims.end(), 2u), 4);
  EXPECT_EQ(s.orbits.size(), 3u);
  EXPECT_TRUE(verify_frontier(f, s));
}

TEST(Stratify, MaxPlaneAndOrthant) {
  EXPECT_EQ(stratify(fmax(2)).strata.size(), 3u);
  EXPECT_EQ(stratify(neg_orthant(2)).strata.size(), 4u);
}

TEST(Stratify, MaxCountsMatchSubsetOracle) {
  // strata of max x_i are indexed by the nonempty set of maximizing indices
  for (int n = 2; n <= 4; ++n)
    EXPECT_EQ(static_cast<long>(stratify(fmax(n)).strata.size()), count_nonempty_subsets(n));
}

TEST(Stratify, LocateAndOrbitWitness) {
  auto f = l1(3);
  auto s = stratify(f);
  EXPECT_EQ(s.strata.size(), 27u);
  for (const auto& m : s.strata) {
    auto k = s.locate(f, m.representative);
    ASSERT_TRUE(k.has_value());
    EXPECT_EQ(&s.strata[*k], &m);
    // from_root maps the orbit root's representative into this stratum
    const Stratum& root = s.strata[s.orbits[m.orbit].front()];
    auto j = s.locate(f, m.from_root.apply(root.representative));
    ASSERT_TRUE(j.has_value());
    EXPECT_EQ(&s.strata[*j], &m);
  }
}

TEST(DualMap, Examples) {
  auto f = l1(2);
  auto s = stratify(f);
  for (std::size_t i = 0; i < s.strata.size(); ++i) {
    auto d = dual_map(f, s, i);
    const QVec& r = s.strata[i].representative;
    if (s.strata[i].dim == 2) {
      EXPECT_EQ(d.closure.points().size(), 1u);
      EXPECT_EQ(d.closure.points()[0], (QVec{sgn(r[0]), sgn(r[1])}));
    }
    if (s.strata[i].dim == 0) {
      EXPECT_TRUE(d.contains(QVec{Rational(1, 2), Rational(-1, 3)}));
      EXPECT_FALSE(d.contains(QVec{1, 0}));
    }
  }
  auto g = neg_orthant(2);
  auto t = stratify(g);
  auto k = t.locate(g, QVec{-1, -1});
  ASSERT_TRUE(k.has_value());
  EXPECT_TRUE(dual_map(g, t, *k).closure == GenPolyhedron::point(QVec{0, 0}));
}

TEST(Conjugate, Values) {
  EXPECT_EQ(*conjugate_value(fmax(2), QVec{Rational(1, 2), Rational(1, 2)}), 0);
  EXPECT_FALSE(conjugate_value(fmax(2), QVec{1, 1}).has_value());
  EXPECT_EQ(*conjugate_value(l1(2), QVec{1, 1}), 0);
  EXPECT_FALSE(conjugate_value(l1(2), QVec{2, 0}).has_value());
  EXPECT_EQ(*conjugate_value(neg_orthant(2), QVec{3, 1}), 0);
  auto cap = MaxAffineFn::make(3, {{QVec{1, 0, 0}, 0}, {QVec{0, 0, 0}, 1}}, {}, SymmetryMode::permutation);
  // f*(y) = sum y - 1 on the simplex-like set {y >= 0, sum y <= 1}
  EXPECT_EQ(*conjugate_value(cap, QVec{Rational(1, 4), Rational(1, 4), 0}), Rational(-1, 2));
}

TEST(Conjugate, SubdiffIsArgmax) {
  auto f = l1(2);
  // df*(y) at y = (1, 1/2): the argmax of <x,y> - |x|_1 is {x1 >= 0, x2 = 0}
  auto g = conjugate_subdiff(f, QVec{1, Rational(1, 2)});
  EXPECT_TRUE(g.contains(QVec{5, 0}));
  EXPECT_FALSE(g.contains(QVec{5, 1}));
  EXPECT_TRUE(conjugate_subdiff(f, QVec{2, 0}).empty());
}

TEST(ConjugateStratification, Bijection) {
  for (const auto& f : {l1(2), fmax(2), neg_orthant(2), l1(3), fmax(3)}) {
    auto s = stratify(f);
    auto cs = conjugate_stratification(f, s);
    EXPECT_TRUE(cs.certified) << f.name();
    EXPECT_EQ(cs.strata.size(), s.strata.size());
    for (std::size_t i = 0; i < s.strata.size(); ++i) EXPECT_EQ(cs.inverse[i], i);
  }
}

TEST(ConjugateStratification, OrthantDims) {
  auto f = neg_orthant(3);
  auto s = stratify(f);
  auto cs = conjugate_stratification(f, s);
  for (std::size_t i = 0; i < s.strata.size(); ++i) EXPECT_EQ(s.strata[i].dim + cs.dims[i], 3u);
}

TEST(FenchelYoung, Examples) {
  auto f = l1(2);
  auto a = fenchel_young_check(f, QVec{2, 0}, QVec{1, 0});
  EXPECT_TRUE(a.pass);
  EXPECT_TRUE(a.equality);
  EXPECT_TRUE(a.subgradient);
  auto b = fenchel_young_check(f, QVec{2, 0}, QVec{0, 1});
  EXPECT_TRUE(b.pass);
  EXPECT_FALSE(b.equality);
  EXPECT_FALSE(b.subgradient);
  auto c = fenchel_young_check(f, QVec{0, 0}, QVec{0, 0});
  EXPECT_TRUE(c.pass);
  EXPECT_TRUE(c.equality);
}

TEST(Biconjugate, Examples) {
  auto a = biconjugate_check(l1(2), QVec{1, -2});
  EXPECT_TRUE(a.pass);
  EXPECT_EQ(*a.biconjugate, 3);
  EXPECT_EQ(*biconjugate_check(fmax(2), QVec{0, 0}).biconjugate, 0);
  EXPECT_EQ(*biconjugate_check(neg_orthant(2), QVec{-1, -1}).biconjugate, 0);
}
