#include "cdpulse/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string_view>

namespace cdpulse::kernels {

#if defined(CDPULSE_HAVE_AVX2_TU)
const KernelTable& avx2_table();
#endif

const KernelTable* avx2_kernels() {
#if defined(CDPULSE_HAVE_AVX2_TU)
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &avx2_table() : nullptr;
#else
  return nullptr;
#endif
}

namespace {

const KernelTable* detect() {
  const char* env = std::getenv("CDPULSE_SIMD");
  const std::string_view want = env ? env : "";
  if (want == "scalar") return &scalar_kernels();
  if (const KernelTable* t = avx2_kernels()) return t;
  return &scalar_kernels();
}

std::atomic<const KernelTable*>& active_slot() {
  static std::atomic<const KernelTable*> slot{detect()};
  return slot;
}

}  // namespace

const KernelTable& active_kernels() { return *active_slot().load(std::memory_order_acquire); }

void set_active_kernels(const KernelTable& table) {
  active_slot().store(&table, std::memory_order_release);
}

}  // namespace cdpulse::kernels
