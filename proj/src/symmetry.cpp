#include "spectral/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "spectral/error.hpp"

namespace spectral {

std::size_t Partition::size() const {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.size();
  return n;
}

std::vector<std::size_t> Partition::block_sizes() const {
  std::vector<std::size_t> s;
  for (const auto& b : blocks) s.push_back(b.size());
  return s;
}

bool Partition::valid() const {
  std::size_t n = size();
  std::vector<bool> seen(n, false);
  for (const auto& b : blocks) {
    if (b.empty()) return false;
    for (std::size_t i : b) {
      if (i >= n || seen[i]) return false;
      seen[i] = true;
    }
  }
  return true;
}

Permutation Permutation::identity(std::size_t n) {
  Permutation p;
  p.image.resize(n);
  std::iota(p.image.begin(), p.image.end(), 0);
  return p;
}

bool Permutation::is_signed() const {
  return std::any_of(signs.begin(), signs.end(), [](int s) { return s < 0; });
}

bool Permutation::valid() const {
  std::vector<bool> seen(image.size(), false);
  for (std::size_t i : image) {
    if (i >= image.size() || seen[i]) return false;
    seen[i] = true;
  }
  if (!signs.empty()) {
    if (signs.size() != image.size()) return false;
    for (int s : signs)
      if (s != 1 && s != -1) return false;
  }
  return true;
}

Permutation Permutation::compose(const Permutation& other) const {
  // (this(other x))_i = s_i (other x)_{img_i} = s_i s'_{img_i} x_{img'_{img_i}}
  const std::size_t n = size();
  Permutation r;
  r.image.resize(n);
  bool any_sign = !signs.empty() || !other.signs.empty();
  if (any_sign) r.signs.assign(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    r.image[i] = other.image[image[i]];
    if (any_sign) r.signs[i] = sign(i) * other.sign(image[i]);
  }
  return r;
}

Permutation Permutation::inverse() const {
  // y_i = s_i x_{img_i}  =>  x_j = s_{inv_j} y_{inv_j}
  const std::size_t n = size();
  Permutation r;
  r.image.resize(n);
  if (!signs.empty()) r.signs.assign(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    r.image[image[i]] = i;
    if (!signs.empty()) r.signs[image[i]] = signs[i];
  }
  return r;
}

Matrix Permutation::matrix() const {
  Matrix p(size(), size());
  for (std::size_t i = 0; i < size(); ++i) p(i, image[i]) = sign(i);
  return p;
}

namespace {

template <class T, class Close>
Partition group_sorted(const std::vector<T>& x, Close close) {
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return x[a] > x[b]; });
  Partition p;
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (k == 0 || !close(x[order[k - 1]], x[order[k]])) p.blocks.emplace_back();
    p.blocks.back().push_back(order[k]);
  }
  for (auto& b : p.blocks) std::sort(b.begin(), b.end());
  return p;
}

}  // namespace

Partition partition_of(std::span<const double> x, double tol) {
  std::vector<double> v(x.begin(), x.end());
  return group_sorted(v, [tol](double a, double b) { return std::abs(a - b) <= tol; });
}

Partition partition_of(const std::vector<mpq_class>& x) {
  return group_sorted(x, [](const mpq_class& a, const mpq_class& b) { return a == b; });
}

mpz_class StabilizerDescriptor::order() const {
  mpz_class ord = 1;
  for (const auto& b : partition.blocks) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), b.size());
    ord *= f;
  }
  if (absolute && zero_block) ord <<= partition.blocks[*zero_block].size();
  return ord;
}

namespace {

// Cartesian product of per-block element lists.
void product(const std::vector<std::vector<Permutation>>& factors, std::size_t n,
             std::vector<Permutation>& out) {
  out.assign(1, Permutation::identity(n));
  out[0].signs.assign(n, 1);
  for (const auto& f : factors) {
    std::vector<Permutation> next;
    next.reserve(out.size() * f.size());
    for (const auto& base : out) {
      for (const auto& g : f) {
        Permutation p = base;
        for (std::size_t i = 0; i < n; ++i) {
          if (g.image[i] != i || g.signs[i] != 1) {
            p.image[i] = g.image[i];
            p.signs[i] = g.signs[i];
          }
        }
        next.push_back(std::move(p));
      }
    }
    out = std::move(next);
  }
  for (auto& p : out)
    if (!p.is_signed()) p.signs.clear();
}

}  // namespace

std::vector<Permutation> StabilizerDescriptor::enumerate(std::uint64_t cap) const {
  mpz_class ord = order();
  if (ord > mpz_class(std::to_string(cap))) throw Error("stabilizer enumeration exceeds cap");
  const std::size_t n = partition.size();
  std::vector<std::vector<Permutation>> factors;
  for (std::size_t bi = 0; bi < partition.blocks.size(); ++bi) {
    const auto& block = partition.blocks[bi];
    bool flips = absolute && zero_block && *zero_block == bi;
    std::vector<Permutation> f;
    std::vector<std::size_t> perm(block.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::size_t patterns = flips ? (std::size_t{1} << block.size()) : 1;
      for (std::size_t mask = 0; mask < patterns; ++mask) {
        Permutation g = Permutation::identity(n);
        g.signs.assign(n, 1);
        for (std::size_t k = 0; k < block.size(); ++k) {
          std::size_t i = block[k], j = block[perm[k]];
          g.image[i] = j;
          int s = 1;
          if (flips) {
            s = (mask >> k) & 1u ? -1 : 1;
          } else if (absolute && !signs.empty()) {
            s = signs[i] * signs[j];
          }
          g.signs[i] = s;
        }
        f.push_back(std::move(g));
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    factors.push_back(std::move(f));
  }
  std::vector<Permutation> out;
  product(factors, n, out);
  std::sort(out.begin(), out.end());
  return out;
}

bool StabilizerDescriptor::contains(const Permutation& p) const {
  const std::size_t n = partition.size();
  if (p.size() != n) return false;
  std::vector<std::size_t> block_of(n);
  for (std::size_t b = 0; b < partition.blocks.size(); ++b)
    for (std::size_t i : partition.blocks[b]) block_of[i] = b;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = p.image[i];
    if (block_of[i] != block_of[j]) return false;
    bool flips = absolute && zero_block && *zero_block == block_of[i];
    if (flips) continue;
    int expected = (absolute && !signs.empty()) ? signs[i] * signs[j] : 1;
    if (p.sign(i) != expected) return false;
  }
  return true;
}

StabilizerDescriptor fix_group(std::span<const double> x, double tol, bool absolute) {
  StabilizerDescriptor d;
  d.absolute = absolute;
  if (!absolute) {
    d.partition = partition_of(x, tol);
    return d;
  }
  std::vector<double> ax(x.size());
  d.signs.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    ax[i] = std::abs(x[i]);
    d.signs[i] = (ax[i] <= tol || x[i] > 0) ? 1 : -1;
  }
  d.partition = partition_of(ax, tol);
  // blocks come in decreasing |x| order, so a zero block is the last one
  if (!d.partition.blocks.empty() && ax[d.partition.blocks.back().front()] <= tol)
    d.zero_block = d.partition.blocks.size() - 1;
  return d;
}

std::pair<Vec, Permutation> sort_desc(std::span<const double> x) {
  Permutation p = Permutation::identity(x.size());
  std::stable_sort(p.image.begin(), p.image.end(),
                   [&](std::size_t a, std::size_t b) { return x[a] > x[b]; });
  Vec sorted(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) sorted[i] = x[p.image[i]];
  return {sorted, p};
}

long orbit_dim(const Partition& p) {
  long total = 0, acc = 0;
  for (const auto& b : p.blocks) {
    total += acc * static_cast<long>(b.size());
    acc += static_cast<long>(b.size());
  }
  return total;
}

long stabilizer_dim(const Partition& p) {
  long s = 0;
  for (const auto& b : p.blocks) {
    long k = static_cast<long>(b.size());
    s += k * (k - 1) / 2;
  }
  return s;
}

std::vector<Permutation> all_permutations(std::size_t n, bool with_signs, std::uint64_t cap) {
  StabilizerDescriptor d;
  d.partition.blocks.emplace_back(n);
  std::iota(d.partition.blocks[0].begin(), d.partition.blocks[0].end(), 0);
  if (with_signs) {
    d.absolute = true;
    d.zero_block = 0;
  }
  if (n == 0) return {Permutation{}};
  return d.enumerate(cap);
}

std::vector<Permutation> group_generators(std::size_t n, bool with_signs) {
  std::vector<Permutation> gens;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    Permutation p = Permutation::identity(n);
    std::swap(p.image[i], p.image[i + 1]);
    gens.push_back(p);
  }
  if (with_signs && n > 0) {
    Permutation p = Permutation::identity(n);
    p.signs.assign(n, 1);
    p.signs[0] = -1;
    gens.push_back(p);
  }
  return gens;
}

SymMembership sym_membership(const std::function<bool(const Vec&)>& in_m, const Vec& x,
                             const std::vector<Permutation>& group) {
  for (const auto& g : group) {
    if (in_m(g.apply(x))) return {true, g};
  }
  return {false, Permutation::identity(x.size())};
}

SymmetryProbeResult local_symmetry_probe(const std::function<double(const Vec&)>& f,
                                         const Vec& xbar, double radius, int trials,
                                         std::uint64_t seed, double grouping_tol) {
  if (!(radius > 0)) throw InputError("radius must be positive");
  auto group = fix_group(xbar, grouping_tol, false).enumerate();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::size_t n = xbar.size();
  SymmetryProbeResult r;
  r.trials = trials;
  r.worst_point = xbar;
  r.worst_sigma = Permutation::identity(n);
  for (int t = 0; t < trials; ++t) {
    Vec dir(n);
    for (double& d : dir) d = g(rng);
    double nd = norm2(dir);
    double rad = radius * std::pow(u(rng), 1.0 / static_cast<double>(std::max<std::size_t>(n, 1)));
    Vec x = xbar;
    if (nd > 0)
      for (std::size_t i = 0; i < n; ++i) x[i] += rad * dir[i] / nd;
    double fx = f(x);
    for (const auto& s : group) {
      double dev = std::abs(fx - f(s.apply(x)));
      double thr = 1e-10 * (1.0 + std::abs(fx));
      if (dev > thr) r.pass = false;
      if (dev > r.max_deviation) {
        r.max_deviation = dev;
        r.worst_point = x;
        r.worst_sigma = s;
      }
    }
  }
  return r;
}

std::string to_string(const Permutation& p) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) os << ',';
    if (p.sign(i) < 0) os << '-';
    os << p.image[i] + 1;
  }
  os << ')';
  return os.str();
}

}  // namespace spectral
