#include <atomic>
#include <cstdlib>
#include <vector>

#include "spectral/kernels/kernels.hpp"

namespace spectral::kernels {
namespace {

std::vector<const KernelTable*> detect() {
  std::vector<const KernelTable*> tables{&scalar_table()};
#if defined(SPECTRAL_HAVE_AVX2)
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2")) tables.push_back(&avx2_table());
#endif
#if defined(SPECTRAL_HAVE_NEON)
  tables.push_back(&neon_table());
#endif
  return tables;
}

const std::vector<const KernelTable*>& tables() {
  static const std::vector<const KernelTable*> detected = detect();
  return detected;
}

const KernelTable* find(std::string_view name) {
  for (const KernelTable* t : tables()) {
    if (t->name == name) return t;
  }
  return nullptr;
}

const KernelTable* initial() {
  if (const char* env = std::getenv("SPECTRAL_SIMD")) {
    if (const KernelTable* t = find(env)) return t;
  }
  return tables().back();
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> selected{initial()};
  return selected;
}

}  // namespace

std::span<const KernelTable* const> available() { return tables(); }

const KernelTable& active() { return *current().load(std::memory_order_acquire); }

bool select(std::string_view name) {
  const KernelTable* t = find(name);
  if (t == nullptr) return false;
  current().store(t, std::memory_order_release);
  return true;
}

}  // namespace spectral::kernels
