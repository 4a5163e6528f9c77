#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "carleman/error.hpp"
#include "carleman/family.hpp"
#include "carleman/spectral.hpp"
#include "oracles.hpp"

using namespace carleman;

namespace {

constexpr double kPi = std::numbers::pi;

double norm2(std::span<const double> x) {
  double r2 = 0;
  for (double c : x) r2 += c * c;
  return r2;
}

GridFunction gaussian(int n, double L, std::size_t N) {
  return sample([](std::span<const double> x) { return cplx(std::exp(-0.5 * norm2(x)), 0); }, n, L, N).f;
}

GridFunction bump(int n, double L, std::size_t N, double radius = 1) {
  return sample([=](std::span<const double> x) { return cplx(standard_bump(std::sqrt(norm2(x)) / radius), 0); }, n,
                L, N)
      .f;
}

// d/dr of exp(-1/(1 - r^2))
double bump_derivative(double r) {
  if (std::abs(r) >= 1) return 0;
  const double d = 1 - r * r;
  return standard_bump(r) * (-2 * r / (d * d));
}

}  // namespace

TEST(Spectral, SampleBoundaryChecks) {
  const Sampled b = sample([](std::span<const double> x) { return cplx(standard_bump(std::sqrt(norm2(x))), 0); }, 2,
                           2, 64);
  EXPECT_FALSE(b.warning);
  EXPECT_EQ(b.boundary, 0);
  const Sampled g = sample([](std::span<const double> x) { return cplx(std::exp(-0.5 * norm2(x)), 0); }, 1, 12, 512);
  EXPECT_FALSE(g.warning);
  EXPECT_LT(g.boundary, 1e-12);
  const Sampled w = sample([](std::span<const double> x) { return cplx(std::exp(-0.5 * norm2(x)), 0); }, 1, 2, 64);
  EXPECT_TRUE(w.warning);
  EXPECT_GT(w.boundary, 0.1);
  EXPECT_FALSE(w.message.empty());
}

TEST(Spectral, SampleRejectsBadGrids) {
  const auto one = [](std::span<const double>) { return cplx(1, 0); };
  EXPECT_THROW(sample(one, 1, 1, 100), DomainError);
  EXPECT_THROW(sample(one, 1, 1, 8), DomainError);
}

TEST(Spectral, GaussianTransform) {
  const GridFunction fhat = fourier(gaussian(1, 12, 512));
  const GridGeometry& g = fhat.geometry();
  double worst_rel = 0, worst_abs = 0;
  for (std::size_t k = 0; k < g.N; ++k) {
    const double xi = g.node(k);
    if (std::abs(xi) > 8) continue;
    const cplx exact = oracle::gaussian_hat_shifted(xi, 0);
    const double err = std::abs(fhat.values()[k] - exact);
    worst_abs = std::max(worst_abs, err);
    if (std::abs(xi) <= 5) worst_rel = std::max(worst_rel, err / std::abs(exact));
  }
  EXPECT_LT(worst_rel, 1e-8);
  // At |xi| = 8 the exact value is ~3e-14, below the roundoff of the sum.
  EXPECT_LT(worst_abs, 1e-12);
}

TEST(Spectral, DualGridLayouts) {
  const GridFunction c = fourier(gaussian(1, 12, 512));
  EXPECT_NEAR(c.geometry().spacing, kPi / 12, 1e-15);
  EXPECT_NEAR(c.geometry().origin, -kPi / c.geometry().spacing * 0 - kPi / (24.0 / 512), 1e-12);
  const GridFunction m = fourier(gaussian(1, 12, 512), DualLayout::midpoint);
  for (std::size_t k = 0; k < m.geometry().N; ++k) {
    const double xi = m.geometry().node(k);
    EXPECT_NE(xi, 0);
    if (std::abs(xi) <= 5) {
      const cplx exact = oracle::gaussian_hat_shifted(xi, 0);
      EXPECT_LT(std::abs(m.values()[k] - exact), 1e-8 * std::abs(exact));
    }
  }
}

TEST(Spectral, ZeroFrequencyIsTheIntegral) {
  const GridFunction f = bump(2, 2, 64);
  double sum = 0;
  for (const cplx& v : f.values()) sum += v.real();
  sum *= f.geometry().cell_measure();
  const GridFunction fhat = fourier(f);
  const std::size_t mid = fhat.geometry().N / 2;
  ASSERT_EQ(fhat.geometry().node(mid), 0);
  EXPECT_NEAR(fhat.values()[mid * fhat.geometry().N + mid].real(), sum, 1e-13);
  EXPECT_NEAR(fhat.values()[mid * fhat.geometry().N + mid].imag(), 0, 1e-13);
}

TEST(Spectral, TranslationModulates) {
  const double c = 0.75;
  const GridFunction f = bump(1, 4, 256);
  const GridFunction fc =
      sample([&](std::span<const double> x) { return cplx(standard_bump(std::abs(x[0] - c)), 0); }, 1, 4, 256).f;
  const GridFunction a = fourier(f), b = fourier(fc);
  for (std::size_t k = 0; k < a.geometry().N; ++k) {
    const double xi = a.geometry().node(k);
    const cplx expect = std::exp(cplx(0, -c * xi)) * a.values()[k];
    EXPECT_NEAR(std::abs(b.values()[k] - expect), 0, 1e-12) << xi;
  }
}

TEST(Spectral, ShiftedTransformOfTiltedGaussian) {
  const GridFunction f = gaussian(1, 12, 1024);
  const Direction dir = Direction::axis(1, 0);
  for (double tau : {0.5, 1.0, 2.0}) {
    const GridFunction t = fourier(tilt(f, tau, dir));
    double worst = 0;
    for (std::size_t k = 0; k < t.geometry().N; ++k) {
      const double xi = t.geometry().node(k);
      if (std::abs(xi) > 6) continue;
      const cplx exact = oracle::gaussian_hat_shifted(xi, tau);
      worst = std::max(worst, std::abs(t.values()[k] - exact) / std::abs(exact));
    }
    EXPECT_LT(worst, 1e-6) << tau;
  }
}

TEST(Spectral, TiltIdentityAndComposition) {
  const GridFunction f = bump(2, 3, 64);
  const Direction dir = Direction::make({0.6, 0.8}, 0.25);
  const GridFunction t0 = tilt(f, 0, dir);
  for (std::size_t i = 0; i < f.size(); ++i) EXPECT_EQ(t0.values()[i], f.values()[i]);
  const GridFunction both = tilt(f, 1.5, dir);
  const GridFunction twice = tilt(tilt(f, 0.5, dir), 1.0, dir);
  for (std::size_t i = 0; i < f.size(); ++i)
    EXPECT_NEAR(std::abs(both.values()[i] - twice.values()[i]), 0, 1e-14 * std::abs(both.values()[i]) + 1e-300);
}

TEST(Spectral, TiltOfBumpIsBounded) {
  const GridFunction f = bump(1, 2, 256);
  for (double tau : {0.5, 2.0, 5.0}) {
    const GridFunction t = tilt(f, tau, Direction::axis(1, 0));
    EXPECT_LE(t.max_abs(), std::exp(tau) * f.max_abs());
  }
}

TEST(Spectral, TiltRefusesUnsafeGrids) {
  const GridFunction f = gaussian(1, 12, 512);
  // e^(tau L) times the boundary level e^(-72) must stay below 1e-10.
  EXPECT_NO_THROW(tilt(f, 3, Direction::axis(1, 0)));
  EXPECT_THROW(tilt(f, 5, Direction::axis(1, 0)), BoundaryError);
  EXPECT_NO_THROW(tilt(bump(1, 2, 64), 8, Direction::axis(1, 0)));
}

TEST(Spectral, DirectionValidation) {
  EXPECT_THROW(Direction::make({1, 1}), DomainError);
  EXPECT_NO_THROW(Direction::make({0.6, 0.8}));
  const Direction d = Direction::axis(3, 2);
  EXPECT_EQ(d.a, (std::vector<double>{0, 0, 1}));
}

TEST(Spectral, GradientOfModulatedBump) {
  const double L = 8;
  const std::size_t N = 1024;
  const GridFunction f =
      sample([](std::span<const double> x) { return cplx(std::sin(x[0]) * standard_bump(std::abs(x[0]) / 4), 0); }, 1,
             L, N)
          .f;
  const auto grad = gradient(f);
  ASSERT_EQ(grad.size(), 1u);
  const GridGeometry& g = f.geometry();
  double err2 = 0, ref2 = 0;
  for (std::size_t j = 0; j < g.N; ++j) {
    const double x = g.node(j);
    const double s = x < 0 ? -1 : 1;
    const double exact = std::cos(x) * standard_bump(std::abs(x) / 4) + std::sin(x) * s * bump_derivative(std::abs(x) / 4) / 4;
    err2 += std::norm(grad[0].values()[j] - exact);
    ref2 += exact * exact;
  }
  EXPECT_LT(std::sqrt(err2 / ref2), 1e-6);
}

TEST(Spectral, GradientIsFlatOnAPlateau) {
  // Smooth plateau: 1 on |x| < 1, falling to 0 by |x| = 3.
  const auto plateau = [](double r) {
    if (r <= 1) return 1.0;
    if (r >= 3) return 0.0;
    const double a = std::exp(-1 / (r - 1)), b = std::exp(-1 / (3 - r));
    return b / (a + b);
  };
  const GridFunction f = sample([&](std::span<const double> x) { return cplx(plateau(std::abs(x[0])), 0); }, 1, 6, 1024).f;
  const auto grad = gradient(f);
  for (std::size_t j = 0; j < f.geometry().N; ++j)
    if (std::abs(f.geometry().node(j)) < 0.5) EXPECT_LT(std::abs(grad[0].values()[j]), 1e-6);
}

TEST(Spectral, GradientProductRule) {
  const double tau = 1;
  const Direction dir = Direction::make({0.6, 0.8});
  const GridFunction f1 = bump(2, 4, 512, 1.5);
  const GridGeometry& geo = f1.geometry();
  std::vector<double> growth(f1.size());
  std::vector<cplx> gv(f1.size());
  for (std::size_t i = 0; i < f1.size(); ++i) {
    double x[2];
    geo.coords(i, x);
    growth[i] = std::exp(tau * (dir.a[0] * x[0] + dir.a[1] * x[1]));
    gv[i] = growth[i] * f1.values()[i];
  }
  const auto lhs = gradient(GridFunction(geo, gv));
  const auto gf1 = gradient(f1);
  double err = 0, scale = 0;
  for (std::size_t i = 0; i < f1.size(); ++i)
    for (std::size_t d = 0; d < 2; ++d) {
      const cplx rhs = growth[i] * (tau * dir.a[d] * f1.values()[i] + gf1[d].values()[i]);
      err = std::max(err, std::abs(lhs[d].values()[i] - rhs));
      scale = std::max(scale, std::abs(rhs));
    }
  EXPECT_LT(err, 1e-6 * scale);
}

TEST(Spectral, GradientCommutesWithGridShifts) {
  const GridFunction f = bump(1, 4, 256);
  const std::size_t shift = 7;
  std::vector<cplx> moved(f.size(), cplx(0));
  for (std::size_t j = 0; j + shift < f.size(); ++j) moved[j + shift] = f.values()[j];
  const GridFunction fm(f.geometry(), moved);
  const auto a = gradient(f), b = gradient(fm);
  for (std::size_t j = 0; j + shift < f.size(); ++j)
    EXPECT_NEAR(std::abs(b[0].values()[j + shift] - a[0].values()[j]), 0, 1e-12);
}

TEST(Spectral, GaussianNorms) {
  for (int n = 1; n <= 2; ++n) {
    const GridFunction f = gaussian(n, 12, n == 1 ? 512 : 256);
    const double exact = std::pow(kPi, n / 4.0);
    EXPECT_NEAR(weighted_norm(f, Weight::constant(1), 2), exact, 1e-8 * exact);
  }
}

TEST(Spectral, IndicatorNormIsVolume) {
  // Steep smooth ramp around |x| = 1.
  for (int n = 1; n <= 2; ++n) {
    const GridFunction f = sample(
        [](std::span<const double> x) { return cplx(0.5 * std::erfc(400 * (std::sqrt(norm2(x)) - 1)), 0); }, n, 2,
        n == 1 ? 4096 : 1024)
                               .f;
    const double p = 1.5;
    const double exact = std::pow(oracle::ball_volume(n), 1 / p);
    EXPECT_NEAR(weighted_norm(f, Weight::constant(1), p), exact, 5e-3 * exact) << n;
  }
}

TEST(Spectral, SingularWeightNormConverges) {
  // n = 2, w = |x|^-1, f = bump: exact value 2 pi int_0^1 r^0 b(r)^s dr.
  const double s = 2;
  const int m = 200000;
  double ref = 0;
  for (int k = 0; k <= m; ++k) {
    const double r = static_cast<double>(k) / m;
    ref += (k == 0 || k == m ? 1 : (k % 2 ? 4 : 2)) * std::pow(standard_bump(r), s);
  }
  ref = std::pow(2 * kPi * ref / (3.0 * m), 1 / s);
  std::vector<double> errs;
  for (std::size_t N : {64u, 128u, 256u}) {
    const GridFunction f = bump(2, 2, N);
    errs.push_back(std::abs(weighted_norm(f, Weight::power(-1, -1), s) - ref));
  }
  EXPECT_GE(std::log2(errs[0] / errs[1]), 1.0);
  EXPECT_GE(std::log2(errs[1] / errs[2]), 1.0);
}

TEST(Spectral, Parseval) {
  for (int n = 1; n <= 2; ++n) {
    const GridFunction f = bump(n, 3, n == 1 ? 512 : 128);
    const double a = weighted_norm(fourier(f), Weight::constant(1), 2);
    const double b = weighted_norm(f, Weight::constant(1), 2);
    EXPECT_NEAR(a / b, std::pow(2 * kPi, n / 2.0), 1e-8 * std::pow(2 * kPi, n / 2.0));
  }
}

TEST(Spectral, RoundTrip) {
  for (int n = 1; n <= 3; ++n) {
    const std::size_t N = n == 3 ? 32 : 128;
    const GridFunction f = sample(
        [](std::span<const double> x) {
          return cplx(standard_bump(std::sqrt(norm2(x))), 0.3 * x[0] * standard_bump(std::sqrt(norm2(x))));
        },
        n, 2, N)
                               .f;
    for (DualLayout layout : {DualLayout::centered, DualLayout::midpoint}) {
      const GridFunction back = inverse_fourier(fourier(f, layout));
      for (std::size_t i = 0; i < f.size(); ++i)
        EXPECT_NEAR(std::abs(back.values()[i] - f.values()[i]), 0, 1e-10 * f.max_abs());
    }
  }
}

TEST(Spectral, TransformsAreDeterministic) {
  const GridFunction f = bump(2, 3, 64);
  const GridFunction a = fourier(f), b = fourier(f);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a.values()[i], b.values()[i]);
  EXPECT_EQ(weighted_norm(f, Weight::power(-1, -1), 1.5), weighted_norm(f, Weight::power(-1, -1), 1.5));
}

TEST(Spectral, WeightSamplingRejectsBadValues) {
  const GridGeometry g = GridGeometry::box(1, 1, 16);
  EXPECT_THROW(sample_weight(g, Weight::general([](std::span<const double>) { return -1.0; })), DomainError);
  EXPECT_THROW(sample_weight(g, Weight::general([](std::span<const double>) { return NAN; })), DomainError);
}
