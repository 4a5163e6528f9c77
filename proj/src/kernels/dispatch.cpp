#include <cassert>
#include <cstdlib>
#include <string>

#include "carleman/kernels.hpp"
#include "kernels/detail.hpp"

namespace carleman::kernels {

std::string_view to_string(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

const Table& scalar_table() {
  static const Table table{Isa::scalar,
                           detail::abs2_scalar,
                           detail::sqrt_inplace_scalar,
                           detail::weighted_sum_scalar,
                           detail::scale_real_scalar,
                           detail::mul_complex_scalar,
                           detail::mul_i_real_scalar};
  return table;
}

const Table* avx2_table() {
#if defined(CARLEMAN_HAVE_AVX2)
  static const Table table{Isa::avx2,
                           detail::abs2_avx2,
                           detail::sqrt_inplace_avx2,
                           detail::weighted_sum_avx2,
                           detail::scale_real_avx2,
                           detail::mul_complex_avx2,
                           detail::mul_i_real_avx2};
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &table : nullptr;
#else
  return nullptr;
#endif
}

namespace {

const Table& select() {
  const char* env = std::getenv("CARLEMAN_SIMD");
  const std::string request = env ? env : "auto";
  if (request == "scalar") return scalar_table();
  if (const Table* t = avx2_table()) return *t;
  return scalar_table();
}

}  // namespace

const Table& active() {
  static const Table& table = select();
  return table;
}

void abs2(std::span<const std::complex<double>> z, std::span<double> out) {
  assert(out.size() == z.size());
  active().abs2(z.data(), out.data(), z.size());
}

void sqrt_inplace(std::span<double> a) { active().sqrt_inplace(a.data(), a.size()); }

double weighted_sum(std::span<const double> w, std::span<const double> a) {
  assert(w.size() == a.size());
  return active().weighted_sum(w.data(), a.data(), w.size());
}

void scale_real(std::span<std::complex<double>> z, std::span<const double> f) {
  assert(z.size() == f.size());
  active().scale_real(z.data(), f.data(), z.size());
}

void mul_complex(std::span<std::complex<double>> z, std::span<const std::complex<double>> c) {
  assert(z.size() == c.size());
  active().mul_complex(z.data(), c.data(), z.size());
}

void mul_i_real(std::span<std::complex<double>> z, std::span<const double> xi) {
  assert(z.size() == xi.size());
  active().mul_i_real(z.data(), xi.data(), z.size());
}

}  // namespace carleman::kernels
