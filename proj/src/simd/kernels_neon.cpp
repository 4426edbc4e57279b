#include <arm_neon.h>

#include "linkrec/simd/kernels.hpp"

namespace linkrec::simd::neon {

void labeled_sums(const double* x, const std::uint8_t* label, std::size_t n, double out[2]) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const uint64x2_t lab = {label[i], label[i + 1]};
    const uint64x2_t is0 = vceqq_u64(lab, vdupq_n_u64(0));
    const float64x2_t v = vld1q_f64(x + i);
    const uint64x2_t bits = vreinterpretq_u64_f64(v);
    acc0 = vaddq_f64(acc0, vreinterpretq_f64_u64(vandq_u64(bits, is0)));
    acc1 = vaddq_f64(acc1, vreinterpretq_f64_u64(vbicq_u64(bits, is0)));
  }
  double s0 = vgetq_lane_f64(acc0, 0) + vgetq_lane_f64(acc0, 1);
  double s1 = vgetq_lane_f64(acc1, 0) + vgetq_lane_f64(acc1, 1);
  for (; i < n; ++i) {
    if (label[i])
      s1 += x[i];
    else
      s0 += x[i];
  }
  out[0] = s0;
  out[1] = s1;
}

}  // namespace linkrec::simd::neon
