#include <gtest/gtest.h>

#include <complex>
#include <cstring>
#include <random>
#include <vector>

#include "carleman/kernels.hpp"

using namespace carleman::kernels;
using cplx = std::complex<double>;

namespace {

// Lengths around the 4- and 8-lane boundaries plus a long one.
const std::size_t kLengths[] = {0, 1, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 33, 1000, 4099};

std::vector<double> reals(std::size_t n, std::uint64_t seed, double lo = -3, double hi = 3) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = U(rng);
  return v;
}

std::vector<cplx> complexes(std::size_t n, std::uint64_t seed) {
  const auto a = reals(n, seed), b = reals(n, seed + 1);
  std::vector<cplx> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = {a[i], b[i]};
  return v;
}

bool bits_equal(const void* a, const void* b, std::size_t bytes) { return bytes == 0 || std::memcmp(a, b, bytes) == 0; }

class KernelsEquivalence : public ::testing::Test {
 protected:
  void SetUp() override {
    vec_ = avx2_table();
    if (!vec_) GTEST_SKIP() << "no AVX2 on this machine or build";
  }
  const Table& ref_ = scalar_table();
  const Table* vec_ = nullptr;
};

}  // namespace

TEST(Kernels, ScalarReferenceValues) {
  const Table& t = scalar_table();
  const std::vector<cplx> z = {{3, 4}, {1, -1}};
  std::vector<double> out(2);
  t.abs2(z.data(), out.data(), 2);
  EXPECT_EQ(out[0], 25);
  EXPECT_EQ(out[1], 2);
  t.sqrt_inplace(out.data(), 2);
  EXPECT_EQ(out[0], 5);
  const std::vector<double> w = {1, 2, 3}, a = {4, 5, 6};
  EXPECT_EQ(t.weighted_sum(w.data(), a.data(), 3), 32);
  std::vector<cplx> m = {{1, 2}};
  const double xi[1] = {3};
  t.mul_i_real(m.data(), xi, 1);
  EXPECT_EQ(m[0], cplx(-6, 3));
}

TEST(Kernels, ActiveTableIsKnown) {
  const Isa isa = active().isa;
  EXPECT_TRUE(isa == Isa::scalar || isa == Isa::avx2);
  EXPECT_FALSE(to_string(isa).empty());
}

TEST_F(KernelsEquivalence, Abs2AndSqrt) {
  for (std::size_t n : kLengths) {
    const auto z = complexes(n, 10 + n);
    std::vector<double> a(n), b(n);
    ref_.abs2(z.data(), a.data(), n);
    vec_->abs2(z.data(), b.data(), n);
    EXPECT_TRUE(bits_equal(a.data(), b.data(), n * sizeof(double))) << n;
    ref_.sqrt_inplace(a.data(), n);
    vec_->sqrt_inplace(b.data(), n);
    EXPECT_TRUE(bits_equal(a.data(), b.data(), n * sizeof(double))) << n;
  }
}

TEST_F(KernelsEquivalence, WeightedSum) {
  for (std::size_t n : kLengths) {
    const auto w = reals(n, 20 + n, 0, 1e3), a = reals(n, 30 + n, 0, 1e-3);
    const double x = ref_.weighted_sum(w.data(), a.data(), n);
    const double y = vec_->weighted_sum(w.data(), a.data(), n);
    EXPECT_TRUE(bits_equal(&x, &y, sizeof x)) << n << ": " << x << " vs " << y;
  }
}

TEST_F(KernelsEquivalence, ComplexScaling) {
  for (std::size_t n : kLengths) {
    const auto z = complexes(n, 40 + n), c = complexes(n, 50 + n);
    const auto f = reals(n, 60 + n);
    for (int op = 0; op < 3; ++op) {
      std::vector<cplx> a = z, b = z;
      switch (op) {
        case 0:
          ref_.scale_real(a.data(), f.data(), n);
          vec_->scale_real(b.data(), f.data(), n);
          break;
        case 1:
          ref_.mul_complex(a.data(), c.data(), n);
          vec_->mul_complex(b.data(), c.data(), n);
          break;
        default:
          ref_.mul_i_real(a.data(), f.data(), n);
          vec_->mul_i_real(b.data(), f.data(), n);
      }
      EXPECT_TRUE(bits_equal(a.data(), b.data(), n * sizeof(cplx))) << "op " << op << " n " << n;
    }
  }
}

TEST_F(KernelsEquivalence, SpecialValuesPropagate) {
  const std::vector<cplx> z = {{INFINITY, 0}, {0, -0.0}, {1e300, 1e300}, {NAN, 1}, {1e-320, 0}, {2, 2}, {3, 3}, {4, 4},
                               {5, 5}};
  std::vector<double> a(z.size()), b(z.size());
  ref_.abs2(z.data(), a.data(), z.size());
  vec_->abs2(z.data(), b.data(), z.size());
  EXPECT_TRUE(bits_equal(a.data(), b.data(), a.size() * sizeof(double)));
}
