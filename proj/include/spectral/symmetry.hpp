#pragma once
// Permutations, value partitions and stabilizers of vectors.
// Indices are 0-based in C++; the JSON layer converts to 1-based.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "spectral/matrix.hpp"

namespace spectral {

struct Partition {
  std::vector<std::vector<std::size_t>> blocks;

  std::size_t size() const;  // n, the number of indices covered
  std::vector<std::size_t> block_sizes() const;
  bool valid() const;
  friend bool operator==(const Partition&, const Partition&) = default;
};

/// Signed permutation acting by (sigma x)_i = signs_i * x_{image_i}.
/// An empty signs vector means all +1.
struct Permutation {
  std::vector<std::size_t> image;
  std::vector<int> signs;

  static Permutation identity(std::size_t n);
  std::size_t size() const { return image.size(); }
  bool is_signed() const;
  int sign(std::size_t i) const { return signs.empty() ? 1 : signs[i]; }
  bool valid() const;

  template <class T>
  std::vector<T> apply(const std::vector<T>& x) const {
    std::vector<T> y(x.size());
    for (std::size_t i = 0; i < image.size(); ++i) {
      y[i] = x[image[i]];
      if (sign(i) < 0) y[i] = -y[i];
    }
    return y;
  }
  /// (this o other) x = this(other(x))
  Permutation compose(const Permutation& other) const;
  Permutation inverse() const;
  /// Signed permutation matrix P with P x = sigma x.
  Matrix matrix() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;
};

/// Blocks of equal values. Values are sorted nonincreasing and adjacent
/// values within tol are merged (so grouping chains). Blocks are listed in
/// decreasing value order; indices within a block are increasing.
Partition partition_of(std::span<const double> x, double tol);
Partition partition_of(const std::vector<mpq_class>& x);

struct StabilizerDescriptor {
  Partition partition;
  bool absolute = false;
  /// index into partition.blocks of the zero block (absolute mode only)
  std::optional<std::size_t> zero_block;
  /// sign of x_i for absolute mode (+1 on the zero block)
  std::vector<int> signs;

  mpz_class order() const;
  /// All group elements. Throws Error if order() exceeds cap.
  std::vector<Permutation> enumerate(std::uint64_t cap = kDefaultCap) const;
  bool contains(const Permutation& p) const;

  static constexpr std::uint64_t kDefaultCap = 3628800;  // 10!
};

/// fix(x). In absolute mode values are grouped by |x_i|, elements may
/// flip signs on the zero block, and elsewhere carry the sign pattern of x
/// so that sigma x = x holds for every element.
StabilizerDescriptor fix_group(std::span<const double> x, double tol, bool absolute);

/// Sorted copy and the permutation with sorted = sigma x. Ties keep the
/// original index order.
std::pair<Vec, Permutation> sort_desc(std::span<const double> x);

long orbit_dim(const Partition& p);
long stabilizer_dim(const Partition& p);

/// Every permutation of n letters, optionally with all sign patterns.
std::vector<Permutation> all_permutations(std::size_t n, bool with_signs,
                                          std::uint64_t cap = StabilizerDescriptor::kDefaultCap);

/// Generators of S_n (adjacent transpositions) plus one sign flip if
/// with_signs.
std::vector<Permutation> group_generators(std::size_t n, bool with_signs);

struct SymMembership {
  bool member = false;
  Permutation witness;
};

/// True iff sigma x lies in M for some sigma in group.
SymMembership sym_membership(const std::function<bool(const Vec&)>& in_m, const Vec& x,
                             const std::vector<Permutation>& group);

struct SymmetryProbeResult {
  bool pass = true;
  double max_deviation = 0.0;
  Vec worst_point;
  Permutation worst_sigma;
  int trials = 0;
};

/// Samples points uniformly in the ball B_radius(xbar) and compares
/// f(x) with f(sigma x) for every sigma in fix(xbar).
SymmetryProbeResult local_symmetry_probe(const std::function<double(const Vec&)>& f,
                                         const Vec& xbar, double radius, int trials,
                                         std::uint64_t seed, double grouping_tol = 0.0);

std::string to_string(const Permutation& p);

}  // namespace spectral
