#include <immintrin.h>

#include "kernels/detail.hpp"

namespace carleman::kernels::detail {

void abs2_avx2(const std::complex<double>* z, double* out, std::size_t n) {
  const double* d = reinterpret_cast<const double*>(z);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    // [r0 i0 r1 i1], [r2 i2 r3 i3]
    const __m256d a = _mm256_loadu_pd(d + 2 * i);
    const __m256d b = _mm256_loadu_pd(d + 2 * i + 4);
    const __m256d a2 = _mm256_mul_pd(a, a);
    const __m256d b2 = _mm256_mul_pd(b, b);
    // hadd -> [|z0|^2 |z2|^2 |z1|^2 |z3|^2]
    const __m256d s = _mm256_hadd_pd(a2, b2);
    _mm256_storeu_pd(out + i, _mm256_permute4x64_pd(s, 0b11011000));
  }
  abs2_scalar(z + i, out + i, n - i);
}

void sqrt_inplace_avx2(double* a, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(a + i, _mm256_sqrt_pd(_mm256_loadu_pd(a + i)));
  sqrt_inplace_scalar(a + i, n - i);
}

double weighted_sum_avx2(const double* w, const double* a, std::size_t n) {
  __m256d lo = _mm256_setzero_pd();
  __m256d hi = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    lo = _mm256_add_pd(lo, _mm256_mul_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(a + i)));
    hi = _mm256_add_pd(hi, _mm256_mul_pd(_mm256_loadu_pd(w + i + 4), _mm256_loadu_pd(a + i + 4)));
  }
  alignas(32) double acc[kLanes];
  _mm256_store_pd(acc, lo);
  _mm256_store_pd(acc + 4, hi);
  double total = combine_lanes(acc);
  for (; i < n; ++i) {
    const double prod = w[i] * a[i];
    total += prod;
  }
  return total;
}

void scale_real_avx2(std::complex<double>* z, const double* f, std::size_t n) {
  double* d = reinterpret_cast<double*>(z);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m128d f2 = _mm_loadu_pd(f + i);
    // [f0 f0 f1 f1]
    const __m256d ff = _mm256_permute4x64_pd(_mm256_castpd128_pd256(f2), 0b01010000);
    _mm256_storeu_pd(d + 2 * i, _mm256_mul_pd(_mm256_loadu_pd(d + 2 * i), ff));
  }
  scale_real_scalar(z + i, f + i, n - i);
}

void mul_complex_avx2(std::complex<double>* z, const std::complex<double>* c, std::size_t n) {
  double* d = reinterpret_cast<double*>(z);
  const double* e = reinterpret_cast<const double*>(c);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d ab = _mm256_loadu_pd(d + 2 * i);      // [a0 b0 a1 b1]
    const __m256d cd = _mm256_loadu_pd(e + 2 * i);      // [c0 d0 c1 d1]
    const __m256d cc = _mm256_movedup_pd(cd);           // [c0 c0 c1 c1]
    const __m256d dd = _mm256_permute_pd(cd, 0b1111);   // [d0 d0 d1 d1]
    const __m256d ba = _mm256_permute_pd(ab, 0b0101);   // [b0 a0 b1 a1]
    const __m256d t1 = _mm256_mul_pd(ab, cc);           // [ac bc ...]
    const __m256d t2 = _mm256_mul_pd(ba, dd);           // [bd ad ...]
    _mm256_storeu_pd(d + 2 * i, _mm256_addsub_pd(t1, t2));
  }
  mul_complex_scalar(z + i, c + i, n - i);
}

void mul_i_real_avx2(std::complex<double>* z, const double* xi, std::size_t n) {
  double* d = reinterpret_cast<double*>(z);
  const __m256d sign = _mm256_set_pd(0.0, -0.0, 0.0, -0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m128d x2 = _mm_loadu_pd(xi + i);
    const __m256d xx = _mm256_permute4x64_pd(_mm256_castpd128_pd256(x2), 0b01010000);
    const __m256d signed_xi = _mm256_xor_pd(xx, sign);                   // [-x0 x0 -x1 x1]
    const __m256d ba = _mm256_permute_pd(_mm256_loadu_pd(d + 2 * i), 0b0101);  // [b0 a0 b1 a1]
    _mm256_storeu_pd(d + 2 * i, _mm256_mul_pd(ba, signed_xi));
  }
  mul_i_real_scalar(z + i, xi + i, n - i);
}

}  // namespace carleman::kernels::detail
