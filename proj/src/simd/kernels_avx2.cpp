#include <immintrin.h>

#include <cstring>

#include "linkrec/simd/kernels.hpp"

namespace linkrec::simd::avx2 {

void labeled_sums(const double* x, const std::uint8_t* label, std::size_t n, double out[2]) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  const __m256i zero = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    std::uint32_t bytes;
    std::memcpy(&bytes, label + i, 4);
    const __m256i lanes = _mm256_cvtepu8_epi64(_mm_cvtsi32_si128(static_cast<int>(bytes)));
    const __m256d is0 = _mm256_castsi256_pd(_mm256_cmpeq_epi64(lanes, zero));
    const __m256d v = _mm256_loadu_pd(x + i);
    acc0 = _mm256_add_pd(acc0, _mm256_and_pd(is0, v));
    acc1 = _mm256_add_pd(acc1, _mm256_andnot_pd(is0, v));
  }
  alignas(32) double l0[4], l1[4];
  _mm256_store_pd(l0, acc0);
  _mm256_store_pd(l1, acc1);
  double s0 = (l0[0] + l0[1]) + (l0[2] + l0[3]);
  double s1 = (l1[0] + l1[1]) + (l1[2] + l1[3]);
  for (; i < n; ++i) {
    if (label[i])
      s1 += x[i];
    else
      s0 += x[i];
  }
  out[0] = s0;
  out[1] = s1;
}

}  // namespace linkrec::simd::avx2
