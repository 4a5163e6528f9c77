#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace carleman {

/// Log-spaced abscissae on [lo, hi].
struct LogGrid {
  double lo = 1e-8;
  double hi = 1e8;
  std::size_t points = 2000;

  std::vector<double> nodes() const;
};

/// coef * (t/knot)^(e1, e2): exponent e1 below the knot, e2 above.
struct PowerForm {
  double coef = 1;
  double knot = 1;
  double e1 = 0;
  double e2 = 0;

  double value(double t) const;
  /// Exact integral over (0, s]; +inf when e1 <= -1.
  double integral(double s) const;
};

/// Non-increasing rearrangement f*(t), tabulated on increasing abscissae.
///
/// A profile built from a closed form evaluates that form directly and keeps
/// the table only for cumulative integrals. Integrals of pure piecewise powers
/// are exact; otherwise the running integral is accumulated segment by
/// segment with the integrand taken as log-linear between nodes (exact for
/// powers, reduces to the trapezoid rule across zeros).
class RearrangementProfile {
 public:
  /// Behaviour outside the tabulated range.
  enum class Extrapolation {
    power_law,  ///< continue with the local log-log slope of the first/last decade
    clamp,      ///< first value below the range, zero above (finite-measure data)
  };

  RearrangementProfile() = default;

  static RearrangementProfile from_closed_form(std::function<double(double)> f, LogGrid grid = {});
  static RearrangementProfile from_power(PowerForm form, LogGrid grid = {});
  static RearrangementProfile from_table(std::vector<double> t, std::vector<double> values,
                                         Extrapolation extrapolation);
  static RearrangementProfile zero(LogGrid grid = {});
  static RearrangementProfile constant(double c, LogGrid grid = {});

  double operator()(double t) const;
  /// Integral of f* over (0, s]; +inf when f* is not integrable at 0.
  double integral(double s) const;

  /// (f*)^e for e > 0 (still non-increasing).
  RearrangementProfile pow(double e) const;
  /// c * f* for c >= 0.
  RearrangementProfile scaled(double c) const;

  std::span<const double> abscissae() const { return t_; }
  std::span<const double> values() const { return v_; }
  bool has_closed_form() const { return static_cast<bool>(closed_); }
  const std::optional<PowerForm>& power_form() const { return power_; }
  bool is_zero() const;
  bool is_non_increasing(double rel_tol = 1e-12) const;

 private:
  void build_cumulative();
  double table_value(double t) const;
  double segment_integral(std::size_t k, double a, double b) const;

  std::vector<double> t_;
  std::vector<double> v_;
  std::vector<double> cum_;  // integral over (0, t_k]
  double head_ = 0;          // integral over (0, t_0]
  double head_slope_ = 0;
  double tail_slope_ = 0;
  Extrapolation extrapolation_ = Extrapolation::power_law;
  std::function<double(double)> closed_;
  std::optional<PowerForm> power_;
};

}  // namespace carleman
