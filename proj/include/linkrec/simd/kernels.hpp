#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace linkrec::simd {

enum class Backend { kScalar, kAvx2, kNeon };

std::string_view name(Backend b);

/// Best backend supported by this CPU and build.
Backend detect();
/// Currently selected backend (detect() unless forced).
Backend active();
/// Overrides dispatch; throws if `b` is unavailable here.
void force(Backend b);
bool available(Backend b);

/// out[0] = sum of x[i] with label[i] == 0, out[1] = sum with label[i] != 0.
void labeled_sums(const double* x, const std::uint8_t* label, std::size_t n, double out[2]);

namespace scalar {
void labeled_sums(const double* x, const std::uint8_t* label, std::size_t n, double out[2]);
}
namespace avx2 {
void labeled_sums(const double* x, const std::uint8_t* label, std::size_t n, double out[2]);
}
namespace neon {
void labeled_sums(const double* x, const std::uint8_t* label, std::size_t n, double out[2]);
}

}  // namespace linkrec::simd
