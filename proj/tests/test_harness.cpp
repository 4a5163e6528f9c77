#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "carleman/error.hpp"
#include "carleman/harness.hpp"
#include "oracles.hpp"

using namespace carleman;

namespace {

double radius(std::span<const double> x) {
  double r2 = 0;
  for (double c : x) r2 += c * c;
  return std::sqrt(r2);
}

GridFunction bump(int n, double L, std::size_t N, double R) {
  return sample([R](std::span<const double> x) { return cplx(standard_bump(radius(x) / R), 0.0); }, n, L, N).f;
}

// n = 2 part (a) tuple with finite r and room for power weights.
ParamSet planar(double tau) { return validate_params(2, 2, 3, 2.5, tau, ParamCase::a); }

}  // namespace

TEST(CarlemanRatio, RoutesAgreeAtModerateTau) {
  // A Gaussian keeps the spectral gradient small at the box edge, which the direct route needs.
  const GridFunction f =
      sample([](std::span<const double> x) { return cplx(std::exp(-radius(x) * radius(x)), 0.0); }, 2, 8, 256).f;
  const Weight u = Weight::power(-0.5, 0), v = Weight::power(0, 1);
  for (double tau : {0.0, 0.5, 1.0}) {
    const ParamSet ps = planar(tau);
    const Direction e1 = Direction::axis(2, 0);
    const double a = carleman_ratio(f, u, v, ps, tau, e1, GradientRoute::conjugated).ratio;
    const double b = carleman_ratio(f, u, v, ps, tau, e1, GradientRoute::direct).ratio;
    EXPECT_NEAR(a, b, 1e-6 * a) << tau;
  }
}

TEST(CarlemanRatio, SobolevStableUnderRefinement) {
  const ParamSet ps = validate_params(3, 2, 6, 2, 0, ParamCase::a);
  const Weight one = Weight::constant(1);
  const Direction e1 = Direction::axis(3, 0);
  const double coarse = carleman_ratio(bump(3, 4, 32, 2), one, one, ps, 0, e1).ratio;
  const double fine = carleman_ratio(bump(3, 4, 64, 2), one, one, ps, 0, e1).ratio;
  EXPECT_NEAR(coarse, fine, 0.02 * fine);
}

TEST(CarlemanRatio, RadialDataIgnoresDirection) {
  const GridFunction f = bump(2, 6, 128, 2);
  const Weight u = Weight::power(-0.5, 0), v = Weight::power(0, 1);
  const ParamSet ps = planar(1);
  const double a = carleman_ratio(f, u, v, ps, 1, Direction::axis(2, 0)).ratio;
  const double b = carleman_ratio(f, u, v, ps, 1, Direction::axis(2, 1)).ratio;
  EXPECT_NEAR(a, b, 1e-10 * a);
}

TEST(CarlemanRatio, ZeroHomogeneous) {
  const GridFunction f = bump(2, 6, 128, 1.5);
  GridFunction g = f;
  for (cplx& z : g.values()) z *= cplx(2, -1);
  const Weight u = Weight::power(-0.5, 0), v = Weight::power(0, 1);
  const ParamSet ps = planar(0.5);
  const Direction e1 = Direction::axis(2, 0);
  const double a = carleman_ratio(f, u, v, ps, 0.5, e1).ratio;
  const double b = carleman_ratio(g, u, v, ps, 0.5, e1).ratio;
  EXPECT_NEAR(a, b, 1e-13 * a);
}

TEST(CarlemanRatio, ZeroFunctionIsUndefined) {
  const GridFunction z = sample([](std::span<const double>) { return cplx(0, 0); }, 2, 4, 32).f;
  const Weight one = Weight::constant(1);
  EXPECT_THROW(carleman_ratio(z, one, one, planar(0), 0, Direction::axis(2, 0)), DomainError);
}

TEST(CarlemanRatio, DimensionMismatchThrows) {
  const Weight one = Weight::constant(1);
  EXPECT_THROW(carleman_ratio(bump(1, 4, 64, 1), one, one, planar(0), 0, Direction::axis(2, 0)), DomainError);
}

TEST(CarlemanRatio, DiscreteDilationScalesLhsExactly) {
  // f(lambda x) on the box L/lambda with the same N reuses the samples of f.
  const ParamSet ps = planar(0);
  const double alpha = 0.5;
  const Weight u = Weight::power(-alpha, -alpha), v = Weight::constant(1);
  const auto fn = [](std::span<const double> x) { return cplx(standard_bump(radius(x) / 2) * (1 + x[0]), 0.0); };
  const double L = 4;
  const InequalityReport base = carleman_ratio(sample(fn, 2, L, 64).f, u, v, ps, 0, Direction::axis(2, 0));
  for (double lam : {0.5, 3.0}) {
    const auto dil = [&](std::span<const double> x) {
      const double y[2] = {lam * x[0], lam * x[1]};
      return fn(y);
    };
    const InequalityReport r = carleman_ratio(sample(dil, 2, L / lam, 64).f, u, v, ps, 0, Direction::axis(2, 0));
    EXPECT_NEAR(r.lhs, std::pow(lam, (alpha - 2) / ps.q) * base.lhs, 1e-12 * r.lhs) << lam;
    EXPECT_NEAR(r.rhs, std::pow(lam, 1 - 2 / ps.p) * base.rhs, 1e-12 * r.rhs) << lam;
  }
}

TEST(CarlemanRatio, ReportCarriesBound) {
  const ParamSet ps = planar(1);
  const InequalityReport r =
      carleman_ratio(bump(2, 6, 64, 2), Weight::power(-0.5, 0), Weight::power(0, 1), ps, 1, Direction::axis(2, 0));
  ASSERT_TRUE(r.bound.has_value());
  EXPECT_GT(r.bound->product, 0);
  EXPECT_EQ(r.inequality, "carleman");
  const InequalityReport g = carleman_ratio(bump(2, 6, 64, 2),
                                            Weight::general([](std::span<const double>) { return 1.0; }),
                                            Weight::constant(1), ps, 1, Direction::axis(2, 0));
  EXPECT_FALSE(g.bound.has_value());
}

TEST(PittRatio, UnweightedIsParseval) {
  for (int n = 1; n <= 2; ++n) {
    const double L = 6;
    const std::size_t N = n == 1 ? 1024 : 128;
    const GridFunction f =
        sample([](std::span<const double> x) { return cplx(std::exp(-0.5 * radius(x) * radius(x)), 0.0); }, n, L, N)
            .f;
    const Weight one = Weight::constant(1);
    const double r = pitt_ratio(f, one, one, 2, 2).ratio;
    EXPECT_NEAR(r, std::pow(2 * std::numbers::pi, n / 2.0), 1e-9) << n;
  }
}

TEST(PittRatio, Errors) {
  const Weight one = Weight::constant(1);
  EXPECT_THROW(pitt_ratio(bump(1, 4, 64, 1), one, one, 1, 2), DomainError);
  const GridFunction z = sample([](std::span<const double>) { return cplx(0, 0); }, 1, 4, 64).f;
  EXPECT_THROW(pitt_ratio(z, one, one, 2, 2), DomainError);
}

TEST(PittRatio, BalancedPowerWeightsStayBounded) {
  // |xi|^-1/2 against |x|^1/2 in L^2(R): dilation invariant, so a family of
  // bumps at different radii and centres gives comparable ratios.
  const Weight u = Weight::power(-0.5, -0.5), w = Weight::power(0.5, 0.5);
  const double L = 16;
  const auto fam = make_family({FamilyKind::ball_bump, 20, 5, 4}, 1, L);
  double lo = INFINITY, hi = 0;
  for (const FamilyMember& m : fam) {
    const InequalityReport r = pitt_ratio(sample_member(m, L, 4096), u, w, 2, 2);
    lo = std::min(lo, r.ratio);
    hi = std::max(hi, r.ratio);
  }
  EXPECT_GT(lo, 0);
  EXPECT_LE(hi / lo, 10);
  const InequalityReport r = pitt_ratio(sample_member(fam[0], L, 4096), u, w, 2, 2);
  ASSERT_TRUE(r.bound.has_value());
  EXPECT_EQ(r.bound_name, "A1");
}

TEST(EstimateConstant, DominatesEveryMember) {
  const ParamSet ps = planar(0.5);
  const Weight u = Weight::power(-0.5, 0), v = Weight::power(0, 1);
  const GridSpec grid{2, 8, 64};
  const auto fam = make_family({FamilyKind::gaussian_poly, 6, 3, 3}, 2, grid.L);
  const EstimateResult e = estimate_constant(fam, u, v, ps, 0.5, grid, Direction::axis(2, 0), 30);
  ASSERT_EQ(e.member_ratios.size(), fam.size());
  for (double r : e.member_ratios)
    if (!std::isnan(r)) EXPECT_GE(e.best_ratio, r);
  EXPECT_LE(e.evaluations, 30);
  ASSERT_TRUE(e.bound.has_value());
  EXPECT_LE(e.best_ratio, 100 * e.bound->product);
}

TEST(EstimateConstant, EmptyFamilyThrows) {
  const ParamSet ps = planar(0);
  const Weight one = Weight::constant(1);
  EXPECT_THROW(estimate_constant({}, one, one, ps, 0, GridSpec{2, 4, 32}, Direction::axis(2, 0)), DomainError);
}

TEST(TauSweep, SingleMemberMatchesDirectRatio) {
  const ParamSet ps = planar(1);
  const Weight u = Weight::power(-0.5, 0), v = Weight::power(0, 1);
  const GridSpec grid{2, 8, 128};
  const auto fam = make_family({FamilyKind::ball_bump, 1, 2, 4}, 2, grid.L);
  const double taus[] = {1, 2, 4};
  const SweepReport s = tau_sweep(fam, u, v, ps, taus, grid, Direction::axis(2, 0));
  ASSERT_EQ(s.ratios.size(), 3u);
  const GridFunction f = sample_member(fam[0], grid.L, grid.N);
  for (std::size_t i = 0; i < 3; ++i) {
    const double direct = carleman_ratio(f, u, v, ps, taus[i], Direction::axis(2, 0)).ratio;
    EXPECT_DOUBLE_EQ(s.ratios[i], direct) << taus[i];
  }
  EXPECT_EQ(s.curve.size(), 3u);
  EXPECT_FALSE(s.verdict.empty());
}

TEST(ScalingSweep, CriticalHardyIsFlat) {
  const ParamSet ps = validate_params(3, 2, 2, 2, 0, ParamCase::a);
  const auto f = [](std::span<const double> x) { return standard_bump(radius(x)); };
  const std::vector<double> lambdas = {0.5, 0.7, 1, 1.4, 2};
  const SweepReport s = scaling_sweep(f, GridSpec{3, 4, 32}, 2, 0, ps, 0, lambdas, Direction::axis(3, 0));
  EXPECT_NEAR(s.slope, 0, 1e-10);
  EXPECT_EQ(s.verdict, "critical-invariant");
  ASSERT_TRUE(s.predicted_slope.has_value());
  EXPECT_NEAR(*s.predicted_slope, 0, 1e-15);
}

TEST(ScalingSweep, OffBalanceGrowsAtPredictedRate) {
  // alpha = 2.4 in n = 3, p = q = 2: predicted slope alpha/2 - 1 = 0.2.
  const ParamSet ps = validate_params(3, 2, 2, 2, 0, ParamCase::a);
  const auto f = [](std::span<const double> x) { return standard_bump(radius(x)); };
  const std::vector<double> lambdas = {0.5, 0.7, 1, 1.4, 2};
  const SweepReport s = scaling_sweep(f, GridSpec{3, 4, 32}, 2.4, 0, ps, 0, lambdas, Direction::axis(3, 0));
  EXPECT_NEAR(*s.predicted_slope, 0.2, 1e-12);
  EXPECT_NEAR(s.slope, 0.2, 0.05);
  EXPECT_EQ(s.verdict, "blowup");
}

TEST(ScalingSweep, BadLambdaIsRecordedNotThrown) {
  const ParamSet ps = validate_params(3, 2, 2, 2, 0, ParamCase::a);
  const auto f = [](std::span<const double> x) { return standard_bump(radius(x)); };
  const std::vector<double> lambdas = {-1, 1};
  const SweepReport s = scaling_sweep(f, GridSpec{3, 4, 16}, 2, 0, ps, 0, lambdas, Direction::axis(3, 0));
  EXPECT_TRUE(std::isnan(s.ratios[0]));
  EXPECT_FALSE(s.errors[0].empty());
  EXPECT_EQ(s.verdict, "inconclusive");
}

TEST(FitLine, RecoversExactLine) {
  const double x[] = {0, 1, 2, 3}, y[] = {1, 3.5, 6, 8.5};
  const auto f = fit_line(x, y);
  EXPECT_NEAR(f[0], 2.5, 1e-14);
  EXPECT_NEAR(f[1], 1, 1e-14);
  EXPECT_NEAR(f[2], 0, 1e-14);
  const double one[] = {1};
  EXPECT_TRUE(std::isnan(fit_line(one, one)[0]));
}

// n = 2, p = 2, q = 4, gamma = 4: r = 4, u = 1, v = |x|^1/2, V = a |x|^-1/2.
// The strip integrand is a^4 |x|^-1, integrable at the origin.
namespace {
ParamSet strip_params() { return validate_params(2, 2, 4, 4, 0, ParamCase::a); }
Region strip_box() {
  const double lo[2] = {-1, 0}, hi[2] = {1, 1};
  return Region::box(2, lo, hi);
}
}  // namespace

TEST(StripEpsilon, SmallPotentialIsCapped) {
  const StripResult s = strip_epsilon(Potential::power(-0.5, 0, 1e-3), Weight::constant(1), Weight::power(0.5, 0.5),
                                      strip_params(), 1, strip_box());
  EXPECT_TRUE(s.capped);
  EXPECT_EQ(s.epsilon, 1);
  EXPECT_LT(s.norm, 0.5);
}

TEST(StripEpsilon, ShrinksWithAmplitudeAndConstant) {
  const ParamSet ps = strip_params();
  const Weight u = Weight::constant(1), v = Weight::power(0.5, 0.5);
  const double e1 = strip_epsilon(Potential::power(-0.5, 0, 1), u, v, ps, 1, strip_box()).epsilon;
  const double e2 = strip_epsilon(Potential::power(-0.5, 0, 2), u, v, ps, 1, strip_box()).epsilon;
  const double e3 = strip_epsilon(Potential::power(-0.5, 0, 1), u, v, ps, 3, strip_box()).epsilon;
  EXPECT_GT(e1, 0);
  EXPECT_LT(e1, 1);
  EXPECT_LT(e2, e1);
  EXPECT_LT(e3, e1);
  const StripResult s = strip_epsilon(Potential::power(-0.5, 0, 1), u, v, ps, 1, strip_box());
  EXPECT_LT(s.norm, 0.5);
  EXPECT_GT(s.norm, 0.45);
}

TEST(StripEpsilon, DivergentNormThrows) {
  // V = |x|^-1 makes the integrand |x|^-3.
  EXPECT_THROW(strip_epsilon(Potential::power(-1, 0), Weight::constant(1), Weight::power(0.5, 0.5), strip_params(), 1,
                             strip_box()),
               DomainError);
  const ParamSet equal = validate_params(3, 2, 2, 2, 0, ParamCase::a);
  const double lo[3] = {-1, -1, 0}, hi[3] = {1, 1, 1};
  EXPECT_THROW(strip_epsilon(Potential::power(0, 0), Weight::constant(1), Weight::constant(1), equal, 1,
                             Region::box(3, lo, hi)),
               DomainError);
}

TEST(PotentialAdmissible, LowerAndUpperExponents) {
  const ParamSet ps = strip_params();
  const PowerExponents e{0, 0, 0.5, 1};
  // lower bound -n/r - alpha1/q - beta1/p = -0.5 - 0.25 = -0.75
  EXPECT_TRUE(potential_admissible(-0.5, 0, e, ps, true));
  EXPECT_FALSE(potential_admissible(-0.75, 0, e, ps, true));
  EXPECT_FALSE(potential_admissible(-1, 0, e, ps, true));
  // upper bound -alpha2/q - beta2/p - n/r = -0.5 - 0.5 = -1
  EXPECT_TRUE(potential_admissible(-0.5, -1.5, e, ps, false));
  EXPECT_FALSE(potential_admissible(-0.5, -1, e, ps, false));
  EXPECT_FALSE(potential_admissible(-0.5, 0, e, ps, false));
}

// n = 3, p = 2, q = 3, r = 6, u = |x|^-0.6, v = 1, V = a |x|^-s on the unit ball:
// T = c0 (a^3 4 pi / (4.2 - 3 s))^(1/6).
TEST(DirichletThreshold, RadialClosedForm) {
  const ParamSet ps = validate_params(3, 2, 3, 2.5, 0, ParamCase::a);
  const Weight u = Weight::power(-0.6, -0.6), v = Weight::constant(1);
  for (double s : {0.0, 0.5, 1.0})
    for (double a : {0.05, 0.5}) {
      const ThresholdResult t = dirichlet_threshold(Potential::power(-s, -s, a), u, v, Region::ball(3, 1), ps, 1.3);
      const double T = 1.3 * std::pow(a * a * a * 4 * std::numbers::pi / (4.2 - 3 * s), 1 / 6.0);
      EXPECT_NEAR(t.T, T, 0.01 * T) << s << " " << a;
      EXPECT_EQ(t.unique, T < 1);
    }
}

TEST(DirichletThreshold, NonPositivePotentialGivesZero) {
  const ParamSet ps = validate_params(3, 2, 3, 2.5, 0, ParamCase::a);
  const ThresholdResult t = dirichlet_threshold(Potential::power(0, 0, -2), Weight::constant(1), Weight::constant(1),
                                                Region::ball(3, 1), ps, 1);
  EXPECT_EQ(t.T, 0);
  EXPECT_TRUE(t.unique);
  EXPECT_EQ(t.verdict, kVerdictUnique);
}

TEST(DirichletThreshold, ScalesAsRootOfAmplitude) {
  const ParamSet ps = validate_params(3, 2, 3, 2.5, 0, ParamCase::a);
  const Weight u = Weight::power(-0.6, -0.6), v = Weight::constant(1);
  const Potential V = Potential::power(-0.5, -0.5, 0.2);
  const double t1 = dirichlet_threshold(V, u, v, Region::ball(3, 1), ps, 1).T;
  const double t4 = dirichlet_threshold(V.scaled(4), u, v, Region::ball(3, 1), ps, 1).T;
  EXPECT_NEAR(t4, 2 * t1, 1e-10 * t4);
}

TEST(DirichletThreshold, DivergenceIsNoConclusion) {
  const ParamSet ps = validate_params(3, 2, 3, 2.5, 0, ParamCase::a);
  // integrand |x|^(1.2 - 3 s) with s = 1.5 is |x|^-3.3
  const ThresholdResult t = dirichlet_threshold(Potential::power(-1.5, -1.5), Weight::power(-0.6, -0.6),
                                                Weight::constant(1), Region::ball(3, 1), ps, 1);
  EXPECT_TRUE(t.divergent);
  EXPECT_FALSE(t.unique);
  EXPECT_EQ(t.verdict, kVerdictNoConclusion);
}

TEST(HarnessJson, ReportsSerialise) {
  const ParamSet ps = planar(1);
  const InequalityReport r =
      carleman_ratio(bump(2, 6, 64, 2), Weight::power(-0.5, 0), Weight::power(0, 1), ps, 1, Direction::axis(2, 0));
  const nlohmann::json j = to_json(r);
  EXPECT_EQ(j.at("inequality"), "carleman");
  EXPECT_DOUBLE_EQ(j.at("ratio").get<double>(), r.ratio);
  SweepReport s;
  s.variable = "tau";
  s.values = {1, 2};
  s.ratios = {0.5, NAN};
  s.errors = {"", "boundary"};
  const std::string csv = to_csv(s);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "tau,ratio,bound,error");
}
