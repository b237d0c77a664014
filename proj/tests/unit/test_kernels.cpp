#include <gtest/gtest.h>

#include <random>

#include "spectral/kernels/kernels.hpp"

using namespace spectral;

namespace {

std::vector<double> random_vec(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<double> v(n);
  for (double& x : v) x = g(rng);
  return v;
}

}  // namespace

TEST(Kernels, ScalarIsAlwaysAvailable) {
  auto av = kernels::available();
  ASSERT_FALSE(av.empty());
  EXPECT_EQ(av.front()->name, "scalar");
}

TEST(Kernels, SelectUnknownFails) { EXPECT_FALSE(kernels::select("no-such-isa")); }

// Every variant must agree with the scalar reference: bit-for-bit on the
// element-wise kernels, to rounding on the reduction.
TEST(Kernels, VariantsMatchScalar) {
  const auto& ref = kernels::scalar_table();
  std::mt19937_64 rng(5);
  for (const auto* k : kernels::available()) {
    for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 17u, 64u, 101u}) {
      auto x = random_vec(n, rng), y = random_vec(n, rng);
      auto x1 = x, y1 = y, x2 = x, y2 = y;
      ref.rotate(x1.data(), y1.data(), n, 0.6, 0.8);
      k->rotate(x2.data(), y2.data(), n, 0.6, 0.8);
      EXPECT_EQ(x1, x2) << k->name << " n=" << n;
      EXPECT_EQ(y1, y2) << k->name << " n=" << n;

      auto z1 = y, z2 = y;
      ref.axpy(-1.25, x.data(), z1.data(), n);
      k->axpy(-1.25, x.data(), z2.data(), n);
      EXPECT_EQ(z1, z2) << k->name << " n=" << n;

      double d1 = ref.dot(x.data(), y.data(), n), d2 = k->dot(x.data(), y.data(), n);
      double mag = 0.0;
      for (std::size_t i = 0; i < n; ++i) mag += std::abs(x[i] * y[i]);
      EXPECT_LE(std::abs(d1 - d2), 1e-14 * (1.0 + mag)) << k->name << " n=" << n;
    }
  }
}

TEST(Kernels, SelectSwitchesActive) {
  for (const auto* k : kernels::available()) {
    ASSERT_TRUE(kernels::select(k->name));
    EXPECT_EQ(kernels::active().name, k->name);
  }
}
