#pragma once

#include <complex>
#include <cstddef>

namespace carleman::kernels::detail {

inline constexpr std::size_t kLanes = 8;

// Fixed reduction tree shared by every implementation.
inline double combine_lanes(const double* acc) {
  const double s0 = acc[0] + acc[4];
  const double s1 = acc[1] + acc[5];
  const double s2 = acc[2] + acc[6];
  const double s3 = acc[3] + acc[7];
  return (s0 + s1) + (s2 + s3);
}

void abs2_scalar(const std::complex<double>* z, double* out, std::size_t n);
void sqrt_inplace_scalar(double* a, std::size_t n);
double weighted_sum_scalar(const double* w, const double* a, std::size_t n);
void scale_real_scalar(std::complex<double>* z, const double* f, std::size_t n);
void mul_complex_scalar(std::complex<double>* z, const std::complex<double>* c, std::size_t n);
void mul_i_real_scalar(std::complex<double>* z, const double* xi, std::size_t n);

#if defined(CARLEMAN_HAVE_AVX2)
void abs2_avx2(const std::complex<double>* z, double* out, std::size_t n);
void sqrt_inplace_avx2(double* a, std::size_t n);
double weighted_sum_avx2(const double* w, const double* a, std::size_t n);
void scale_real_avx2(std::complex<double>* z, const double* f, std::size_t n);
void mul_complex_avx2(std::complex<double>* z, const std::complex<double>* c, std::size_t n);
void mul_i_real_avx2(std::complex<double>* z, const double* xi, std::size_t n);
#endif

}  // namespace carleman::kernels::detail
