#include "carleman/params.hpp"

#include <algorithm>
#include <cmath>

#include "carleman/error.hpp"

namespace carleman {

std::string_view to_string(ParamCase c) { return c == ParamCase::a ? "a" : "b"; }

ParamCase parse_param_case(std::string_view s) {
  if (s == "a" || s == "A") return ParamCase::a;
  if (s == "b" || s == "B") return ParamCase::b;
  throw ParamError("case must be 'a' or 'b'");
}

std::string_view to_string(Necessity v) {
  switch (v) {
    case Necessity::exact: return "exact";
    case Necessity::subcritical: return "subcritical";
    case Necessity::violated: return "violated";
  }
  return "violated";
}

namespace {

bool le(double a, double b) { return a <= b + kExponentTol; }
bool lt(double a, double b) { return a < b - kExponentTol; }

}  // namespace

ParamSet validate_params(int n, double p, double q, double gamma, double tau, ParamCase c) {
  if (!std::isfinite(p) || !std::isfinite(q) || !std::isfinite(gamma) || !std::isfinite(tau))
    throw ParamError("exponents must be finite");
  if (n < 1) throw ParamError("n must be a positive integer");
  if (!(p > 1)) throw ParamError("p must exceed 1");
  if (!(q > 1)) throw ParamError("q must exceed 1");
  if (tau < 0) throw ParamError("tau must be nonnegative");
  if (!(gamma > 1)) throw ParamError("gamma must exceed 1");

  ParamSet ps;
  ps.n = n;
  ps.p = p;
  ps.q = q;
  ps.gamma = gamma;
  ps.tau = tau;
  ps.param_case = c;
  ps.p_dual = p / (p - 1);
  ps.gamma_dual = gamma / (gamma - 1);
  const double inv_r = std::abs(1 / p - 1 / q);
  ps.r = inv_r > 0 ? 1 / inv_r : std::numeric_limits<double>::infinity();

  const double inv_n = 1.0 / n;
  const double inv_gd = 1 / ps.gamma_dual;

  if (c == ParamCase::a) {
    if (q < p) throw ParamError("q < p in part (a)");
    if (lt(gamma, std::max(p, ps.p_dual))) throw ParamError("gamma below max(p,p')");
    if (!le(gamma, q)) throw ParamError("gamma above q");
    if (tau == 0) {
      if (!lt(inv_n, inv_gd)) throw ParamError("1/gamma' not above 1/n at tau = 0");
      if (!le(inv_gd, inv_n + 1 / q)) throw ParamError("1/gamma' above 1/n + 1/q at tau = 0");
    }
  } else {
    if (!(q < p)) throw ParamError("q >= p in part (b)");
    if (!le(gamma, q)) throw ParamError("gamma above q");
    if (tau == 0) {
      if (n == 1 || !lt(static_cast<double>(n) / (n - 1), gamma))
        throw ParamError("gamma not above n/(n-1) at tau = 0");
    }
  }
  return ps;
}

bool PowerRegion::contains(const PowerExponents& e) const {
  if (e.alpha1 < 0 || e.alpha2 < 0 || e.beta1 < 0 || e.beta2 < 0) return false;
  return le(e.alpha1, alpha1_max) && le(alpha2_min, e.alpha2) && le(e.beta1, beta1_max) &&
         le(beta2_min, e.beta2);
}

PowerRegion admissible_powers(const ParamSet& ps) {
  if (ps.param_case != ParamCase::a)
    throw ParamError("admissible power region is only defined in part (a)");
  const double n = ps.n;
  const double alpha_crit = n * (1 - ps.q / ps.gamma_dual + ps.q / n);
  const double beta_crit = n * (ps.p / ps.gamma_dual - 1);
  PowerRegion region;
  region.alpha1_max = alpha_crit;
  region.alpha2_min = ps.tau == 0 ? alpha_crit : 0.0;
  region.beta1_max = beta_crit;
  region.beta2_min = beta_crit;
  return region;
}

Necessity necessity_check(double alpha, double beta, const ParamSet& ps) {
  const double lhs = alpha / ps.q + beta / ps.p;
  const double rhs = ps.n * (1 / ps.q - 1 / ps.p) + 1;
  if (std::abs(lhs - rhs) <= kExponentTol) return Necessity::exact;
  if (ps.tau > 0 && lhs < rhs) return Necessity::subcritical;
  return Necessity::violated;
}

}  // namespace carleman
