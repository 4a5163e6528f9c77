#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "carleman/cubature.hpp"
#include "carleman/family.hpp"
#include "carleman/params.hpp"
#include "carleman/spectral.hpp"
#include "carleman/weights.hpp"

namespace carleman {

struct GridSpec {
  int n = 1;
  double L = 1;
  std::size_t N = 16;
};

/// Potential V on R^n: a piecewise power amplitude * |x|^(s1, s2), or any
/// signed function (for example a sampled grid).
class Potential {
 public:
  static Potential power(double s1, double s2, double amplitude = 1);
  static Potential function(std::function<double(std::span<const double>)> f, std::string label);
  /// Nearest-cell values of the real part of a spatial grid function; 0 outside its box.
  static Potential grid(const GridFunction& g);

  double operator()(std::span<const double> x) const;
  Potential scaled(double c) const;
  bool is_power() const { return power_; }
  double s1() const { return s1_; }
  double s2() const { return s2_; }
  double amplitude() const { return amp_; }
  const std::string& label() const { return label_; }

 private:
  bool power_ = false;
  double s1_ = 0, s2_ = 0, amp_ = 1;
  std::function<double(std::span<const double>)> f_;
  std::string label_;
};

/// Conditions-side prediction A_u(tau) * A_v (A_v replaced by the part (b)
/// constant for q < p). Empty when the weights have no closed-form rearrangement.
struct ConditionBound {
  double A_u = 0;
  double A_v = 0;
  double product = 0;
};
std::optional<ConditionBound> condition_bound(const Weight& u, const Weight& v, const ParamSet& ps, double tau);

struct InequalityReport {
  std::string inequality;  ///< "carleman" or "pitt"
  double lhs = 0;
  double rhs = 0;
  double ratio = 0;
  std::optional<ParamSet> params;
  double p = 0, q = 0;
  double tau = 0;
  std::vector<double> direction;
  double offset = 0;
  GridSpec grid;
  std::string u_label, v_label, f_label;
  std::optional<ConditionBound> bound;
  std::string bound_name;  ///< which constant `bound` holds
};

/// How e^(-tau l) grad f is formed.
///   conjugated: grad f1 + tau a f1 with f1 = e^(-tau l) f (stable for large tau)
///   direct:     e^(-tau l) applied to the spectral gradient of f
enum class GradientRoute { conjugated, direct };

/// ||e^(-tau l) u^(1/q) f||_q / ||e^(-tau l) v^(1/p) grad f||_p.
/// Throws DomainError("ratio undefined (0/0)") for f = 0.
InequalityReport carleman_ratio(const GridFunction& f, const Weight& u, const Weight& v, const ParamSet& ps,
                                double tau, const Direction& dir,
                                GradientRoute route = GradientRoute::conjugated);

/// ||fhat u^(1/q)||_q / ||f w^(1/p)||_p on the midpoint dual grid.
InequalityReport pitt_ratio(const GridFunction& f, const Weight& u, const Weight& w, double p, double q);

struct EstimateResult {
  double best_ratio = 0;
  FamilyMember best_member;
  std::vector<double> member_ratios;  ///< NaN for members that failed
  int evaluations = 0;
  std::optional<ConditionBound> bound;
};

/// Family maximum of the Carleman ratio, refined by coordinate search over
/// the best member's scales (x2 / x0.5 steps, shrinking), at most max_evals
/// ratio evaluations in total.
EstimateResult estimate_constant(std::span<const FamilyMember> family, const Weight& u, const Weight& v,
                                 const ParamSet& ps, double tau, const GridSpec& grid, const Direction& dir,
                                 int max_evals = 200);

struct SweepReport {
  std::string variable;  ///< "tau" or "lambda"
  std::vector<double> values;
  std::vector<double> ratios;  ///< NaN where the point failed
  std::vector<std::string> errors;
  std::vector<double> curve;  ///< conditions-side curve (tau sweeps), may be empty
  double slope = 0;
  double intercept = 0;
  double residual = 0;  ///< RMS residual of the log-log fit
  std::optional<double> predicted_slope;
  std::optional<double> right_half_slope;
  std::string verdict;
  std::optional<ParamSet> params;
  GridSpec grid;
  std::string note;
};

/// Empirical cap on the growth of the best ratio over tau >= 1, relative to tau = 1.
inline constexpr double kUniformCap = 3.0;

SweepReport tau_sweep(std::span<const FamilyMember> family, const Weight& u, const Weight& v, const ParamSet& ps,
                      std::span<const double> taus, const GridSpec& grid, const Direction& dir);

/// Ratio for f_lambda(x) = f(lambda x) with u = |x|^-alpha, v = |x|^beta,
/// each dilate sampled on its own box of half-width L/lambda with the same N.
SweepReport scaling_sweep(const std::function<double(std::span<const double>)>& f, const GridSpec& base,
                          double alpha, double beta, const ParamSet& ps, double tau,
                          std::span<const double> lambdas, const Direction& dir);

/// Ordinary least squares fit of y = slope x + intercept; returns {slope, intercept, rms residual}.
std::array<double, 3> fit_line(std::span<const double> x, std::span<const double> y);

/// Largest eps (relative bisection tolerance 1e-4) with
/// c1 * ||V v^(1/p) u^(-1/q)||_{L^r(strip(eps) n box)} < 1/2, strip(eps) = {0 < x_n < eps}.
/// Capped at the box height. Throws DomainError when the norm diverges.
struct StripResult {
  double epsilon = 0;
  double norm = 0;  ///< c1 * norm at epsilon
  bool capped = false;
};
StripResult strip_epsilon(const Potential& V, const Weight& u, const Weight& v, const ParamSet& ps, double c1,
                          const Region& support_box);

/// s1 > -n/r - alpha1/q - beta1/p and, without compact support, s2 < -alpha2/q - beta2/p - n/r.
bool potential_admissible(double s1, double s2, const PowerExponents& powers, const ParamSet& ps,
                          bool compact_support);

struct ThresholdResult {
  double T = 0;
  bool divergent = false;
  bool unique = false;
  std::string verdict;
};

inline constexpr const char* kVerdictUnique = "uniqueness guaranteed (f = 0)";
inline constexpr const char* kVerdictNoConclusion = "no conclusion";

/// T = c0 ||u^(-1/q) v^(1/p) V_+^(1/p)||_{L^r(D)}; unique iff T < 1.
ThresholdResult dirichlet_threshold(const Potential& V, const Weight& u, const Weight& v, const Region& domain,
                                    const ParamSet& ps, double c0);

/// Worker count from CARLEMAN_THREADS (default: hardware concurrency, at least 1).
int worker_count();

nlohmann::json to_json(const ParamSet& ps);
nlohmann::json to_json(const GridSpec& g);
nlohmann::json to_json(const InequalityReport& r);
nlohmann::json to_json(const SweepReport& r);
nlohmann::json to_json(const EstimateResult& r);
/// Header <variable>,ratio,bound,error then one row per sweep point
std::string to_csv(const SweepReport& r);

}  // namespace carleman
