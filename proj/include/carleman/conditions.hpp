#pragma once

#include <string_view>

#include "carleman/params.hpp"
#include "carleman/profile.hpp"
#include "carleman/quadrature.hpp"

namespace carleman {

enum class Method { closed_form, scan, quadrature };
std::string_view to_string(Method m);

/// An extended nonnegative constant. value is +inf when divergent, and the
/// direction says which end of s in (0, inf) is responsible.
struct ConditionValue {
  double value = 0;
  double argmax_s = 0;  ///< 0 for integral-type constants
  Method method = Method::scan;
  Divergence divergence = Divergence::none;
  bool degenerate = false;  ///< excluded zero weight (u = 0, or v = +inf)

  bool finite() const { return divergence == Divergence::none; }
};

/// Integral of (t + tau^n)^(-gamma'/n) over (0, 1/s). +inf when tau = 0 and gamma' >= n.
double kernel_integral(double s, double tau, double gamma_dual, int n);

/// A_u(tau), the q-th root of the sup over s of
///   int_0^s u* * kernel_integral(s)^(q/gamma')           (tau > 0)
///   s^(1 - q(1/gamma' - 1/n)) u*(s)                      (tau = 0)
ConditionValue A_u_tau(const RearrangementProfile& u_star, const ParamSet& ps, double tau);

/// A_v = [sup_s s^(p/gamma' - 1) (1/v)*(s)]^(1/p).
ConditionValue A_v(const RearrangementProfile& v_recip_star, const ParamSet& ps);

/// Part (b) constant, with 1/r = 1/gamma - 1/p:
///   [int_0^inf s^(-r/gamma - 1) (int_0^s (1/v)*^(1/(p-1)))^(r/p') ds]^(1/r)
ConditionValue A_v_tilde(const RearrangementProfile& v_recip_star, const ParamSet& ps);

/// sup_s (int_0^(1/s) u*)^(1/q) (int_0^s ((1/w)*)^(1/(p-1)))^(1/p'), for 1 < p <= q.
ConditionValue pitt_A1(const RearrangementProfile& u_star, const RearrangementProfile& w_recip_star,
                       double p, double q);

/// For 1 < q < p, with r = qp/(p - q) and W = ((1/w)*)^(1/(p-1)):
///   [int_0^inf (int_0^(1/s) u*)^(r/q) (int_0^s W)^(r/q') W(s) ds]^(1/r)
ConditionValue pitt_A2(const RearrangementProfile& u_star, const RearrangementProfile& w_recip_star,
                       double p, double q);

struct SupPairResult {
  ConditionValue A;  ///< sup s^(-b1,-b2) int_0^s psi
  ConditionValue B;  ///< sup s^(1-b1, 1-min(b2,1)) psi(s)
  double ratio = 0;  ///< A/B when both finite, otherwise NaN
  bool beta1_at_most_one = true;
};

SupPairResult sup_pair_AB(const RearrangementProfile& psi, double beta1, double beta2);

enum class SimplifiedCase { i, ii, iii };
std::string_view to_string(SimplifiedCase c);

/// Which simplified form of A_u(1) applies; throws DomainError when none does.
SimplifiedCase simplified_case(const ParamSet& ps);

/// Simplified A_u(1) (q-th root), routed by simplified_case():
///   (i)   sup s^(1 - q(1/gamma' - 1/n), 0) u*(s)
///   (ii)  sup ln(1/s + 1)^(q/2) int_0^s u*
///   (iii) sup s^(0, -q/gamma') int_0^s u*
ConditionValue A_u1_simplified(const RearrangementProfile& u_star, const ParamSet& ps);

}  // namespace carleman
