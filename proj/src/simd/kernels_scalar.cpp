#include "linkrec/simd/kernels.hpp"

namespace linkrec::simd::scalar {

void labeled_sums(const double* x, const std::uint8_t* label, std::size_t n, double out[2]) {
  double s0 = 0.0, s1 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (label[i])
      s1 += x[i];
    else
      s0 += x[i];
  }
  out[0] = s0;
  out[1] = s1;
}

}  // namespace linkrec::simd::scalar
