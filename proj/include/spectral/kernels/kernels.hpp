#pragma once
// Dense double-precision inner loops used by the eigen/SVD solvers and the
// matrix products. One scalar reference implementation plus ISA-specific
// variants; the variant is chosen once at startup.
//
// Element-wise kernels (rotate, axpy) must round exactly like the scalar
// reference. Reductions (dot) may differ in summation order only.

#include <cstddef>
#include <span>
#include <string_view>

namespace spectral::kernels {

/// x <- c*x - s*y,  y <- s*x + c*y  (plane rotation applied to two rows)
using RotateFn = void (*)(double* x, double* y, std::size_t n, double c, double s);
/// y <- y + a*x
using AxpyFn = void (*)(double a, const double* x, double* y, std::size_t n);
/// sum_i x_i * y_i
using DotFn = double (*)(const double* x, const double* y, std::size_t n);

struct KernelTable {
  std::string_view name;
  RotateFn rotate;
  AxpyFn axpy;
  DotFn dot;
};

const KernelTable& scalar_table();
#if defined(SPECTRAL_HAVE_AVX2)
const KernelTable& avx2_table();
#endif
#if defined(SPECTRAL_HAVE_NEON)
const KernelTable& neon_table();
#endif

/// Variants compiled into this binary that the running CPU can execute.
std::span<const KernelTable* const> available();

/// Currently selected variant. Defaults to the widest supported ISA; the
/// SPECTRAL_SIMD environment variable ("scalar", "avx2", "neon") overrides.
const KernelTable& active();

/// Select a variant by name. Returns false if it is not available.
bool select(std::string_view name);

inline void rotate(std::span<double> x, std::span<double> y, double c, double s) {
  active().rotate(x.data(), y.data(), x.size(), c, s);
}
inline void axpy(double a, std::span<const double> x, std::span<double> y) {
  active().axpy(a, x.data(), y.data(), x.size());
}
inline double dot(std::span<const double> x, std::span<const double> y) {
  return active().dot(x.data(), y.data(), x.size());
}

}  // namespace spectral::kernels
