#include "kernels/detail.hpp"

#include <cmath>

namespace carleman::kernels::detail {

void abs2_scalar(const std::complex<double>* z, double* out, std::size_t n) {
  const double* d = reinterpret_cast<const double*>(z);
  for (std::size_t i = 0; i < n; ++i) {
    const double re = d[2 * i];
    const double im = d[2 * i + 1];
    const double rr = re * re;
    const double ii = im * im;
    out[i] = rr + ii;
  }
}

void sqrt_inplace_scalar(double* a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) a[i] = std::sqrt(a[i]);
}

double weighted_sum_scalar(const double* w, const double* a, std::size_t n) {
  double acc[kLanes] = {};
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    for (std::size_t l = 0; l < kLanes; ++l) {
      const double prod = w[i + l] * a[i + l];
      acc[l] += prod;
    }
  }
  double total = combine_lanes(acc);
  for (; i < n; ++i) {
    const double prod = w[i] * a[i];
    total += prod;
  }
  return total;
}

void scale_real_scalar(std::complex<double>* z, const double* f, std::size_t n) {
  double* d = reinterpret_cast<double*>(z);
  for (std::size_t i = 0; i < n; ++i) {
    d[2 * i] *= f[i];
    d[2 * i + 1] *= f[i];
  }
}

void mul_complex_scalar(std::complex<double>* z, const std::complex<double>* c, std::size_t n) {
  double* d = reinterpret_cast<double*>(z);
  const double* e = reinterpret_cast<const double*>(c);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = d[2 * i], b = d[2 * i + 1];
    const double cr = e[2 * i], ci = e[2 * i + 1];
    const double ac = a * cr, bd = b * ci, bc = b * cr, ad = a * ci;
    d[2 * i] = ac - bd;
    d[2 * i + 1] = bc + ad;
  }
}

void mul_i_real_scalar(std::complex<double>* z, const double* xi, std::size_t n) {
  double* d = reinterpret_cast<double*>(z);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = d[2 * i], b = d[2 * i + 1];
    d[2 * i] = b * -xi[i];
    d[2 * i + 1] = a * xi[i];
  }
}

}  // namespace carleman::kernels::detail
