#include <gtest/gtest.h>

#include <random>

#include "carleman/error.hpp"
#include "carleman/params.hpp"
#include "oracles.hpp"

using namespace carleman;

namespace {

std::string rule_of(int n, double p, double q, double g, double tau, ParamCase c) {
  try {
    validate_params(n, p, q, g, tau, c);
  } catch (const ParamError& e) {
    return e.rule();
  }
  return "";
}

}  // namespace

TEST(Params, SobolevTupleIsValid) {
  const ParamSet ps = validate_params(3, 1.5, 3, 3, 0, ParamCase::a);
  EXPECT_DOUBLE_EQ(ps.gamma_dual, 1.5);
  EXPECT_DOUBLE_EQ(ps.p_dual, 3);
  EXPECT_NEAR(ps.r, 3, 1e-12);  // 1/r = 2/3 - 1/3
}

TEST(Params, LogCaseIsValid) {
  const ParamSet ps = validate_params(2, 2, 2, 2, 1, ParamCase::a);
  EXPECT_FALSE(ps.r_finite());
}

TEST(Params, RejectsQBelowPInPartA) {
  EXPECT_EQ(rule_of(3, 3, 2, 2, 0, ParamCase::a), "q < p in part (a)");
}

TEST(Params, NamesEachViolatedRule) {
  EXPECT_EQ(rule_of(3, 1.5, 3, 2.5, 0, ParamCase::a), "gamma below max(p,p')");
  EXPECT_EQ(rule_of(3, 2, 3, 3.5, 0, ParamCase::a), "gamma above q");
  // n = 1: 1/gamma' is never above 1/n.
  EXPECT_EQ(rule_of(1, 2, 3, 2.5, 0, ParamCase::a), "1/gamma' not above 1/n at tau = 0");
  // n = 3, gamma = q = 10: 1/gamma' = 0.9 > 1/3 + 1/10.
  EXPECT_EQ(rule_of(3, 2, 10, 10, 0, ParamCase::a), "1/gamma' above 1/n + 1/q at tau = 0");
  EXPECT_EQ(rule_of(3, 2, 3, 2, 0, ParamCase::b), "q >= p in part (b)");
  EXPECT_EQ(rule_of(2, 4, 3, 1.5, 0, ParamCase::b), "gamma not above n/(n-1) at tau = 0");
  EXPECT_EQ(rule_of(0, 2, 2, 2, 0, ParamCase::a), "n must be a positive integer");
  EXPECT_EQ(rule_of(3, 1, 2, 2, 0, ParamCase::a), "p must exceed 1");
  EXPECT_EQ(rule_of(3, 2, 2, 2, -1, ParamCase::a), "tau must be nonnegative");
  EXPECT_EQ(rule_of(3, NAN, 2, 2, 0, ParamCase::a), "exponents must be finite");
}

TEST(Params, PartBAllowsSmallGammaWhenTauPositive) {
  EXPECT_NO_THROW(validate_params(2, 4, 3, 1.5, 1, ParamCase::b));
  EXPECT_NO_THROW(validate_params(1, 4, 3, 2, 0.5, ParamCase::b));
}

TEST(Params, DerivedExponentsAndRevalidation) {
  for (const ParamSet& ps : oracle::random_part_a(11, 200, 1, 4, 1.0)) {
    EXPECT_NEAR(1 / ps.p + 1 / ps.p_dual, 1, 1e-15);
    EXPECT_NEAR(1 / ps.gamma + 1 / ps.gamma_dual, 1, 1e-15);
    const ParamSet again = revalidate(ps);
    EXPECT_EQ(again.p_dual, ps.p_dual);
    EXPECT_EQ(again.gamma_dual, ps.gamma_dual);
    EXPECT_EQ(again.r, ps.r);
  }
}

TEST(Params, BoundaryExponentsAreExactlyNecessary) {
  for (const ParamSet& ps : oracle::random_part_a(12, 200, 2, 3, 0.0)) {
    const PowerRegion reg = admissible_powers(ps);
    EXPECT_EQ(necessity_check(reg.alpha1_max, reg.beta1_max, ps), Necessity::exact);
    EXPECT_GE(reg.alpha1_max, -1e-12);
    EXPECT_GE(reg.beta1_max, -1e-12);
  }
}

TEST(Params, AdmissibleRegionExamples) {
  const PowerRegion sob = admissible_powers(validate_params(3, 1.5, 3, 3, 0, ParamCase::a));
  EXPECT_NEAR(sob.alpha1_max, 0, 1e-12);
  EXPECT_NEAR(sob.beta1_max, 0, 1e-12);
  EXPECT_TRUE(sob.contains({0, 0, 0, 0}));
  EXPECT_FALSE(sob.contains({0.1, 0.1, 0, 0}));

  const PowerRegion hardy = admissible_powers(validate_params(3, 2, 2, 2, 0, ParamCase::a));
  EXPECT_NEAR(hardy.alpha1_max, 2, 1e-12);
  EXPECT_NEAR(hardy.alpha2_min, 2, 1e-12);
  EXPECT_NEAR(hardy.beta1_max, 0, 1e-12);
  EXPECT_TRUE(hardy.contains({2, 2, 0, 0}));

  const PowerRegion tilted = admissible_powers(validate_params(3, 2, 2, 2, 1, ParamCase::a));
  EXPECT_EQ(tilted.alpha2_min, 0);
  EXPECT_TRUE(tilted.contains({2, 0.5, 0, 0}));
}

TEST(Params, NecessityExamples) {
  EXPECT_EQ(necessity_check(0, 0, validate_params(3, 1.5, 3, 3, 0, ParamCase::a)), Necessity::exact);
  EXPECT_EQ(necessity_check(2, 0, validate_params(3, 2, 2, 2, 0, ParamCase::a)), Necessity::exact);
  EXPECT_EQ(necessity_check(0, 0, validate_params(3, 2, 2, 2, 2, ParamCase::a)), Necessity::subcritical);
  EXPECT_EQ(necessity_check(1, 0, validate_params(3, 2, 2, 2, 0, ParamCase::a)), Necessity::violated);
  EXPECT_EQ(necessity_check(3, 0, validate_params(3, 2, 2, 2, 2, ParamCase::a)), Necessity::violated);
}

TEST(Params, PartBHasNoPowerRegion) {
  EXPECT_THROW(admissible_powers(validate_params(2, 4, 3, 2, 1, ParamCase::b)), ParamError);
}
