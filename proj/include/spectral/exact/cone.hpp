#pragma once
// Double description method: generators of {y : A y <= 0}.

#include <cstdint>
#include <vector>

#include "spectral/exact/rational.hpp"

namespace spectral {

/// Fixed-size bit set sized at runtime (constraint incidence sets).
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }
  std::size_t size() const { return n_; }
  std::size_t count() const;
  bool subset_of(const Bitset& o) const;
  Bitset operator&(const Bitset& o) const;
  friend bool operator==(const Bitset&, const Bitset&) = default;
  friend auto operator<=>(const Bitset&, const Bitset&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

struct ConeGenerators {
  /// basis of the lineality space (rref)
  std::vector<QVec> lineality;
  /// extreme rays modulo lineality, primitive integer vectors
  std::vector<QVec> rays;
};

/// Generators of {y in Q^d : <a, y> <= 0 for every row a}. Throws
/// BudgetExceeded when the intermediate ray count passes
/// SPECTRAL_DD_RAY_BUDGET (default 100000).
ConeGenerators cone_generators(const std::vector<QVec>& rows, std::size_t d);

/// Points, rays and lineality of {x : A x <= b}, via homogenization.
struct PolyhedronGenerators {
  std::vector<QVec> points;
  std::vector<QVec> rays;
  std::vector<QVec> lineality;
};
PolyhedronGenerators polyhedron_generators(const std::vector<QVec>& a, const QVec& b, std::size_t d);

}  // namespace spectral
