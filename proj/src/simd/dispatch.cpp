#include <atomic>
#include <string>

#include "linkrec/error.hpp"
#include "linkrec/simd/kernels.hpp"

namespace linkrec::simd {

namespace {
std::atomic<int> g_forced{-1};
}

std::string_view name(Backend b) {
  switch (b) {
    case Backend::kScalar: return "scalar";
    case Backend::kAvx2: return "avx2";
    case Backend::kNeon: return "neon";
  }
  return "unknown";
}

bool available(Backend b) {
  switch (b) {
    case Backend::kScalar: return true;
    case Backend::kAvx2:
#if defined(LINKREC_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Backend::kNeon:
#if defined(LINKREC_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Backend detect() {
  if (available(Backend::kAvx2)) return Backend::kAvx2;
  if (available(Backend::kNeon)) return Backend::kNeon;
  return Backend::kScalar;
}

Backend active() {
  const int f = g_forced.load(std::memory_order_relaxed);
  if (f >= 0) return static_cast<Backend>(f);
  static const Backend detected = detect();
  return detected;
}

void force(Backend b) {
  if (!available(b))
    fail(ErrorKind::kConfiguration, "simd", std::string("backend ") + std::string(name(b)) + " is unavailable");
  g_forced.store(static_cast<int>(b), std::memory_order_relaxed);
}

void labeled_sums(const double* x, const std::uint8_t* label, std::size_t n, double out[2]) {
  switch (active()) {
#if defined(LINKREC_HAVE_AVX2)
    case Backend::kAvx2: return avx2::labeled_sums(x, label, n, out);
#endif
#if defined(LINKREC_HAVE_NEON)
    case Backend::kNeon: return neon::labeled_sums(x, label, n, out);
#endif
    default: return scalar::labeled_sums(x, label, n, out);
  }
}

}  // namespace linkrec::simd
