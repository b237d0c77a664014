#include <gtest/gtest.h>

#include "spectral/symmetry.hpp"

using namespace spectral;

namespace {

Partition part(std::vector<std::vector<std::size_t>> b) { return Partition{std::move(b)}; }

}  // namespace

TEST(PartitionOf, Examples) {
  EXPECT_EQ(partition_of(Vec{3, 1, 1}, 0), part({{0}, {1, 2}}));
  EXPECT_EQ(partition_of(Vec{5, 5, 5}, 0), part({{0, 1, 2}}));
  EXPECT_EQ(partition_of(Vec{1, 1 + 1e-12, 0}, 1e-9), part({{0, 1}, {2}}));
}

TEST(PartitionOf, ChainsAndCovers) {
  Vec x{0, 0.6e-9, 1.2e-9, 5};
  Partition p = partition_of(x, 1e-9);
  EXPECT_TRUE(p.valid());
  EXPECT_EQ(p.size(), 4u);
  EXPECT_EQ(p.block_sizes(), (std::vector<std::size_t>{1, 3}));
}

TEST(FixGroup, Orders) {
  EXPECT_EQ(fix_group(Vec{2, 2, 0}, 0, false).order(), 2);
  EXPECT_EQ(fix_group(Vec{1, 2, 3}, 0, false).order(), 1);
  auto g = fix_group(Vec{1, 0, 0}, 0, true);
  EXPECT_EQ(g.order(), 8);
  auto els = g.enumerate();
  EXPECT_EQ(els.size(), 8u);
  for (const auto& p : els) EXPECT_EQ(p.apply(Vec{1, 0, 0}), (Vec{1, 0, 0}));
}

TEST(FixGroup, AbsoluteCarriesSigns) {
  Vec x{-2, 2, 0};
  auto g = fix_group(x, 0, true);
  for (const auto& p : g.enumerate()) {
    EXPECT_TRUE(g.contains(p));
    Vec y = p.apply(x);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(y[i], x[i]);
  }
}

TEST(SortDesc, Examples) {
  auto [s, p] = sort_desc(Vec{1, 3, 2});
  EXPECT_EQ(s, (Vec{3, 2, 1}));
  EXPECT_EQ(p.apply(Vec{1, 3, 2}), s);
  EXPECT_EQ(sort_desc(Vec{3, 2, 1}).second, Permutation::identity(3));
  EXPECT_EQ(sort_desc(Vec{1, 1}).second, Permutation::identity(2));
}

TEST(Dims, OrbitAndStabilizer) {
  EXPECT_EQ(orbit_dim(part({{0}, {1}, {2}})), 3);
  EXPECT_EQ(orbit_dim(part({{0, 1, 2}})), 0);
  EXPECT_EQ(orbit_dim(part({{0, 1}, {2}})), 2);
  EXPECT_EQ(stabilizer_dim(part({{0, 1}, {2}})), 1);
  EXPECT_EQ(stabilizer_dim(part({{0}, {1}, {2}})), 0);
  EXPECT_EQ(stabilizer_dim(part({{0, 1, 2}})), 3);
}

TEST(Dims, OrbitPlusStabilizerIsGroupDim) {
  for (const auto& p : {part({{0, 1}, {2, 3}}), part({{0}, {1, 2, 3}}), part({{0}, {1}, {2}, {3}})})
    EXPECT_EQ(orbit_dim(p) + stabilizer_dim(p), 6);
}

TEST(PermutationOps, ComposeInverse) {
  Permutation a{{1, 2, 0}, {1, -1, 1}}, b{{2, 1, 0}, {}};
  Vec x{1, 2, 3};
  EXPECT_EQ(a.compose(b).apply(x), a.apply(b.apply(x)));
  EXPECT_EQ(a.inverse().apply(a.apply(x)), x);
  Matrix m = a.matrix();
  Vec y(3, 0.0);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) y[i] += m(i, j) * x[j];
  EXPECT_EQ(y, a.apply(x));
}

TEST(AllPermutations, Counts) {
  EXPECT_EQ(all_permutations(3, false).size(), 6u);
  EXPECT_EQ(all_permutations(3, true).size(), 48u);
}

TEST(SymMembership, Examples) {
  auto sorted = [](const Vec& x) { return std::is_sorted(x.rbegin(), x.rend()); };
  auto r = sym_membership(sorted, Vec{1, 3}, all_permutations(2, false));
  EXPECT_TRUE(r.member);
  EXPECT_EQ(r.witness.apply(Vec{1, 3}), (Vec{3, 1}));
  auto pos = [](const Vec& x) { return x[0] > 0 && x[1] > 0; };
  EXPECT_FALSE(sym_membership(pos, Vec{-1, 2}, all_permutations(2, false)).member);
}

TEST(LocalSymmetryProbe, SymmetricAndNot) {
  auto l1 = [](const Vec& x) { return std::abs(x[0]) + std::abs(x[1]); };
  auto r = local_symmetry_probe(l1, Vec{0.3, -1}, 0.5, 50, 1);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.max_deviation, 0.0);
  auto first = [](const Vec& x) { return x[0]; };
  auto s = local_symmetry_probe(first, Vec{1, 1}, 0.5, 50, 1);
  EXPECT_FALSE(s.pass);
  EXPECT_EQ(s.worst_sigma.image, (std::vector<std::size_t>{1, 0}));
}

TEST(LocalSymmetryProbe, OnlyFixOfBase) {
  // f(x) = max(x1, x2) + x3 is invariant under swapping 1,2 only
  auto f = [](const Vec& x) { return std::max(x[0], x[1]) + 2 * x[2]; };
  EXPECT_TRUE(local_symmetry_probe(f, Vec{1, 1, 0}, 0.1, 50, 2, 1e-12).pass);
  EXPECT_FALSE(local_symmetry_probe(f, Vec{1, 1, 1}, 0.1, 50, 2, 1e-12).pass);
}

TEST(ToString, OneBased) { EXPECT_EQ(to_string(Permutation{{1, 0}, {}}), "(2,1)"); }
