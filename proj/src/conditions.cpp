#include "carleman/conditions.hpp"

#include <cmath>
#include <limits>

#include "carleman/error.hpp"
#include "carleman/weights.hpp"

namespace carleman {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Product with 0 * x = 0, so vanishing weights never produce NaN.
double mul(double a, double b) { return (a == 0 || b == 0) ? 0.0 : a * b; }

double root(double x, double e) { return x == 0 ? 0.0 : std::pow(x, e); }

ConditionValue from_sup(const SupResult& r, double outer_exponent) {
  ConditionValue out;
  out.method = Method::scan;
  out.divergence = r.divergence;
  out.argmax_s = r.argmax;
  out.value = r.divergence == Divergence::none ? root(r.value, outer_exponent) : kInf;
  return out;
}

ConditionValue from_integral(const IntegralResult& r, double outer_exponent) {
  ConditionValue out;
  out.method = Method::quadrature;
  out.divergence = r.divergence;
  out.value = r.divergence == Divergence::none ? root(r.value, outer_exponent) : kInf;
  return out;
}

ConditionValue degenerate_zero(Method m) {
  ConditionValue out;
  out.method = m;
  out.degenerate = true;
  return out;
}

ConditionValue divergent(Divergence d, Method m) {
  ConditionValue out;
  out.value = kInf;
  out.method = m;
  out.divergence = d;
  return out;
}

bool integrable_at_zero(const RearrangementProfile& f) { return std::isfinite(f.integral(1.0)); }

}  // namespace

std::string_view to_string(Method m) {
  switch (m) {
    case Method::closed_form: return "closed-form";
    case Method::scan: return "scan";
    case Method::quadrature: return "quadrature";
  }
  return "scan";
}

std::string_view to_string(SimplifiedCase c) {
  switch (c) {
    case SimplifiedCase::i: return "i";
    case SimplifiedCase::ii: return "ii";
    case SimplifiedCase::iii: return "iii";
  }
  return "i";
}

double kernel_integral(double s, double tau, double gamma_dual, int n) {
  if (!(s > 0)) throw DomainError("conditions", "kernel integral needs s > 0");
  if (!(tau >= 0)) throw DomainError("conditions", "tau must be nonnegative");
  if (!(gamma_dual > 0)) throw DomainError("conditions", "gamma' must be positive");
  const double e = 1 - gamma_dual / n;
  if (tau == 0) {
    if (e <= 0) return kInf;
    return std::pow(1 / s, e) / e;
  }
  const double T = std::pow(tau, n);
  const double L = std::log1p(1 / (s * T));
  if (e == 0) return L;
  return std::pow(T, e) * std::expm1(e * L) / e;
}

ConditionValue A_u_tau(const RearrangementProfile& u_star, const ParamSet& ps, double tau) {
  if (u_star.is_zero()) return degenerate_zero(Method::scan);
  const double q = ps.q;
  const double gd = ps.gamma_dual;
  const int n = ps.n;
  if (tau == 0) {
    const double c = 1 / q - (1 / gd - 1.0 / n);
    return from_sup(sup_over_scan([&](double s) { return mul(std::pow(s, c), root(u_star(s), 1 / q)); }), 1.0);
  }
  if (!integrable_at_zero(u_star)) return divergent(Divergence::at_zero, Method::scan);
  return from_sup(sup_over_scan([&](double s) {
                    return mul(root(u_star.integral(s), 1 / q), root(kernel_integral(s, tau, gd, n), 1 / gd));
                  }),
                  1.0);
}

ConditionValue A_v(const RearrangementProfile& v_recip_star, const ParamSet& ps) {
  if (v_recip_star.is_zero()) return degenerate_zero(Method::scan);
  const double e = ps.p / ps.gamma_dual - 1;
  return from_sup(sup_over_scan([&](double s) { return mul(std::pow(s, e), v_recip_star(s)); }), 1 / ps.p);
}

ConditionValue A_v_tilde(const RearrangementProfile& v_recip_star, const ParamSet& ps) {
  if (ps.param_case != ParamCase::b) throw DomainError("conditions", "A_v_tilde needs a part (b) parameter set");
  if (v_recip_star.is_zero()) return degenerate_zero(Method::quadrature);
  const double r = 1 / (1 / ps.gamma - 1 / ps.p);
  const RearrangementProfile W = v_recip_star.pow(1 / (ps.p - 1));
  if (!integrable_at_zero(W)) return divergent(Divergence::at_zero, Method::quadrature);
  const double outer = -r / ps.gamma;
  const double inner = r / ps.p_dual;
  return from_integral(integrate_over_log_scale([&](double s) {
                         return mul(std::pow(s, outer), root(W.integral(s), inner));
                       }),
                       1 / r);
}

ConditionValue pitt_A1(const RearrangementProfile& u_star, const RearrangementProfile& w_recip_star, double p,
                       double q) {
  if (!(p > 1) || !(q >= p)) throw DomainError("conditions", "pitt_A1 needs 1 < p <= q");
  if (u_star.is_zero() || w_recip_star.is_zero()) return degenerate_zero(Method::scan);
  const double pd = p / (p - 1);
  const RearrangementProfile W = w_recip_star.pow(1 / (p - 1));
  if (!integrable_at_zero(u_star)) return divergent(Divergence::both, Method::scan);
  if (!integrable_at_zero(W)) return divergent(Divergence::at_zero, Method::scan);
  return from_sup(sup_over_scan([&](double s) {
                    return mul(root(u_star.integral(1 / s), 1 / q), root(W.integral(s), 1 / pd));
                  }),
                  1.0);
}

ConditionValue pitt_A2(const RearrangementProfile& u_star, const RearrangementProfile& w_recip_star, double p,
                       double q) {
  if (!(q > 1) || !(p > q)) throw DomainError("conditions", "pitt_A2 needs 1 < q < p");
  if (u_star.is_zero() || w_recip_star.is_zero()) return degenerate_zero(Method::quadrature);
  const double r = q * p / (p - q);
  const double qd = q / (q - 1);
  const RearrangementProfile W = w_recip_star.pow(1 / (p - 1));
  if (!integrable_at_zero(u_star)) return divergent(Divergence::both, Method::quadrature);
  if (!integrable_at_zero(W)) return divergent(Divergence::at_zero, Method::quadrature);
  return from_integral(integrate_over_log_scale([&](double s) {
                         const double a = root(u_star.integral(1 / s), r / q);
                         const double b = root(W.integral(s), r / qd);
                         return mul(s, mul(mul(a, b), W(s)));
                       }),
                       1 / r);
}

SupPairResult sup_pair_AB(const RearrangementProfile& psi, double beta1, double beta2) {
  if (!(beta1 > 0) || !(beta2 > 0)) throw DomainError("conditions", "exponents must be positive");
  if (psi.is_zero()) throw DomainError("conditions", "psi must not vanish identically");
  SupPairResult out;
  out.beta1_at_most_one = beta1 <= 1 + kExponentTol;
  const double b2p = std::min(beta2, 1.0);
  if (!integrable_at_zero(psi)) {
    out.A = divergent(Divergence::at_zero, Method::scan);
  } else {
    out.A = from_sup(sup_over_scan([&](double s) {
                       return mul(eval_piecewise_power(s, -beta1, -beta2), psi.integral(s));
                     }),
                     1.0);
  }
  out.B = from_sup(sup_over_scan([&](double s) {
                     return mul(eval_piecewise_power(s, 1 - beta1, 1 - b2p), psi(s));
                   }),
                   1.0);
  out.ratio = (out.A.finite() && out.B.finite() && out.B.value > 0) ? out.A.value / out.B.value
                                                                     : std::numeric_limits<double>::quiet_NaN();
  return out;
}

SimplifiedCase simplified_case(const ParamSet& ps) {
  if (ps.param_case != ParamCase::a) throw DomainError("conditions", "simplified A_u(1) needs part (a)");
  if (ps.n == 2 && std::abs(ps.p - 2) <= kExponentTol && std::abs(ps.gamma - 2) <= kExponentTol)
    return SimplifiedCase::ii;
  if (ps.n >= 2 && 1.0 / ps.n < 1 / ps.gamma_dual - kExponentTol) return SimplifiedCase::i;
  if (ps.n == 1) return SimplifiedCase::iii;
  throw DomainError("conditions", "no simplified form of A_u(1) applies");
}

ConditionValue A_u1_simplified(const RearrangementProfile& u_star, const ParamSet& ps) {
  const SimplifiedCase c = simplified_case(ps);
  if (u_star.is_zero()) return degenerate_zero(Method::scan);
  const double q = ps.q;
  switch (c) {
    case SimplifiedCase::i: {
      const double e = 1 - q * (1 / ps.gamma_dual - 1.0 / ps.n);
      return from_sup(sup_over_scan([&](double s) { return mul(eval_piecewise_power(s, e, 0), u_star(s)); }),
                      1 / q);
    }
    case SimplifiedCase::ii:
      if (!integrable_at_zero(u_star)) return divergent(Divergence::at_zero, Method::scan);
      return from_sup(sup_over_scan([&](double s) {
                        return mul(std::pow(std::log1p(1 / s), q / 2), u_star.integral(s));
                      }),
                      1 / q);
    case SimplifiedCase::iii:
      if (!integrable_at_zero(u_star)) return divergent(Divergence::at_zero, Method::scan);
      return from_sup(sup_over_scan([&](double s) {
                        return mul(eval_piecewise_power(s, 0, -q / ps.gamma_dual), u_star.integral(s));
                      }),
                      1 / q);
  }
  return {};
}

}  // namespace carleman
