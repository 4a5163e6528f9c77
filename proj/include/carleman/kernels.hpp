#pragma once

// Data-parallel inner loops of the quadrature and transform code.
//
// Every kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant chosen at runtime. The vector code performs the same IEEE
// operations in the same order as the scalar code (no FMA contraction, fixed
// 8-lane reduction tree), so the two paths agree bit for bit.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace carleman::kernels {

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa);

struct Table {
  Isa isa;
  /// out[i] = re(z[i])^2 + im(z[i])^2
  void (*abs2)(const std::complex<double>* z, double* out, std::size_t n);
  /// a[i] = sqrt(a[i])
  void (*sqrt_inplace)(double* a, std::size_t n);
  /// sum of w[i] * a[i]; lane l accumulates i = l (mod 8), lanes combined pairwise
  double (*weighted_sum)(const double* w, const double* a, std::size_t n);
  /// z[i] *= f[i] for real f
  void (*scale_real)(std::complex<double>* z, const double* f, std::size_t n);
  /// z[i] *= c[i]
  void (*mul_complex)(std::complex<double>* z, const std::complex<double>* c, std::size_t n);
  /// z[i] *= i * xi[i]
  void (*mul_i_real)(std::complex<double>* z, const double* xi, std::size_t n);
};

const Table& scalar_table();

/// nullptr when the binary was built without AVX2 support or the CPU lacks it.
const Table* avx2_table();

/// Table used by the library. Chosen once from the CPU features; the
/// environment variable CARLEMAN_SIMD=scalar|avx2 overrides the choice.
const Table& active();

// Span front ends over active().
void abs2(std::span<const std::complex<double>> z, std::span<double> out);
void sqrt_inplace(std::span<double> a);
double weighted_sum(std::span<const double> w, std::span<const double> a);
void scale_real(std::span<std::complex<double>> z, std::span<const double> f);
void mul_complex(std::span<std::complex<double>> z, std::span<const std::complex<double>> c);
void mul_i_real(std::span<std::complex<double>> z, std::span<const double> xi);

}  // namespace carleman::kernels
