#pragma once

#include <limits>
#include <string>
#include <string_view>

namespace carleman {

/// Which regime an exponent tuple belongs to:
/// part (a) is 1 < p <= q, part (b) is 1 < q < p.
enum class ParamCase { a, b };

std::string_view to_string(ParamCase c);
ParamCase parse_param_case(std::string_view s);

/// Validated exponent tuple (n, p, q, gamma, tau) with its derived exponents.
///
/// Only validate_params() produces instances, so every ParamSet in circulation
/// satisfies the hypotheses of its case. Conditions involving the dual of
/// gamma are stated on gamma' = gamma/(gamma-1).
struct ParamSet {
  int n = 0;
  double p = 0;
  double q = 0;
  double gamma = 0;
  double tau = 0;
  ParamCase param_case = ParamCase::a;

  double p_dual = 0;      ///< p' = p/(p-1)
  double gamma_dual = 0;  ///< gamma' = gamma/(gamma-1)
  /// Hoelder exponent between the two Lebesgue exponents, 1/r = |1/p - 1/q|;
  /// +inf when p == q.
  double r = std::numeric_limits<double>::infinity();

  bool r_finite() const { return r < std::numeric_limits<double>::infinity(); }
};

/// Tolerance used for every comparison of O(1) exponent combinations.
inline constexpr double kExponentTol = 1e-12;

/// Checks the hypotheses of the requested case and fills in p', gamma', r.
/// Throws ParamError naming the first violated inequality.
ParamSet validate_params(int n, double p, double q, double gamma, double tau, ParamCase c);

inline ParamSet revalidate(const ParamSet& ps) {
  return validate_params(ps.n, ps.p, ps.q, ps.gamma, ps.tau, ps.param_case);
}

/// u = |x|^(-alpha1, -alpha2), v = |x|^(beta1, beta2).
struct PowerExponents {
  double alpha1 = 0;
  double alpha2 = 0;
  double beta1 = 0;
  double beta2 = 0;
};

/// Admissible region for piecewise power weights in part (a).
struct PowerRegion {
  double alpha1_max = 0;  ///< alpha1 <= n(1 - q/gamma' + q/n)
  double alpha2_min = 0;  ///< same bound when tau = 0, otherwise 0
  double beta1_max = 0;   ///< 0 <= beta1 <= n(p/gamma' - 1)
  double beta2_min = 0;   ///< beta2 >= n(p/gamma' - 1)

  bool contains(const PowerExponents& e) const;
};

PowerRegion admissible_powers(const ParamSet& ps);

enum class Necessity { exact, subcritical, violated };
std::string_view to_string(Necessity v);

/// Homogeneity balance alpha/q + beta/p against n(1/q - 1/p) + 1. Equality
/// is required when tau = 0; tau > 0 allows the left side to be smaller.
Necessity necessity_check(double alpha, double beta, const ParamSet& ps);

}  // namespace carleman
