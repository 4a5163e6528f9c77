#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "carleman/profile.hpp"

namespace carleman {

/// t^(beta1, beta2): t^beta1 on (0, 1], t^beta2 on [1, inf). Throws DomainError for t <= 0.
double eval_piecewise_power(double t, double beta1, double beta2);

/// Volume of the unit ball in R^n.
double unit_ball_volume(int n);

struct PiecewisePowerWeight {
  double beta1 = 0;
  double beta2 = 0;

  double operator()(double t) const { return eval_piecewise_power(t, beta1, beta2); }
};

enum class Monotonicity { non_increasing, non_decreasing, none };

/// w(x) = profile(|x|) on R^n.
struct RadialWeight {
  std::function<double(double)> profile;
  Monotonicity monotonicity = Monotonicity::none;
  int n = 1;
};

/// Nonnegative samples of a weight on the midpoint-offset box grid
/// x_j = -L + (j + 1/2) h, h = 2L/N, stored row-major (last axis fastest).
class GridWeight {
 public:
  GridWeight(int n, double half_width, std::size_t samples_per_axis, std::vector<double> values);

  static GridWeight sample(int n, double half_width, std::size_t samples_per_axis,
                           const std::function<double(std::span<const double>)>& w);
  static GridWeight sample_radial(int n, double half_width, std::size_t samples_per_axis,
                                  const std::function<double(double)>& profile);

  int dimension() const { return n_; }
  double half_width() const { return L_; }
  std::size_t samples_per_axis() const { return N_; }
  double spacing() const { return 2 * L_ / static_cast<double>(N_); }
  double cell_measure() const;
  std::span<const double> values() const { return values_; }
  /// Value of the cell containing x; 0 outside the box.
  double at(std::span<const double> x) const;

 private:
  int n_;
  double L_;
  std::size_t N_;
  std::vector<double> values_;
};

/// Closed-form rearrangement f*(t) = f0((t/V_n)^(1/n)) of a radially
/// non-increasing weight. Throws DomainError when the profile is not
/// non-increasing on sampled radii.
RearrangementProfile rearrange_radial_monotone(const RadialWeight& w, LogGrid grid = {});

/// Closed-form rearrangement of |x|^(-alpha1, -alpha2) on R^n (alpha_j >= 0):
/// (t/V_n)^(-alpha1/n, -alpha2/n).
RearrangementProfile rearrange_power(int n, double alpha1, double alpha2, LogGrid grid = {});

/// Cell values sorted in decreasing order; entry k is the (k+1)-th largest,
/// attached to the abscissa t = (k + 1/2) h^n.
std::vector<double> sorted_cell_values(const GridWeight& w);

/// Brute-force rearrangement by sorting cell values.
///
/// Runs of tied values (cells on a common sphere) are represented by one
/// knot at the centre of their measure interval; long plateaus keep a knot at
/// each end so jumps stay within one cell measure. The profile interpolates
/// linearly between knots, is constant below the first one and zero beyond
/// the box measure.
RearrangementProfile rearrange_grid(const GridWeight& w);

/// A weight evaluated pointwise on R^n.
///
/// Power, constant and monotone radial weights also know their closed-form
/// rearrangements, which the condition constants consume.
class Weight {
 public:
  enum class Kind { constant, power, radial, general, grid };

  static Weight constant(double c);
  /// |x|^(e1, e2)
  static Weight power(double e1, double e2);
  static Weight radial(std::function<double(double)> profile, Monotonicity m, std::string label = "radial");
  static Weight general(std::function<double(std::span<const double>)> w, std::string label = "general");
  static Weight grid(GridWeight g);

  double operator()(std::span<const double> x) const;
  Kind kind() const { return kind_; }
  bool is_radial() const { return kind_ == Kind::constant || kind_ == Kind::power || kind_ == Kind::radial; }
  /// Value at radius r for radial weights.
  double at_radius(double r) const;

  double constant_value() const { return c_; }
  double exponent1() const { return e1_; }
  double exponent2() const { return e2_; }
  const std::string& label() const { return label_; }

  /// w* for a radially non-increasing weight on R^n; nullopt otherwise.
  std::optional<RearrangementProfile> rearrangement(int n, LogGrid grid = {}) const;
  /// (1/w)* for a radially non-decreasing weight on R^n; nullopt otherwise.
  std::optional<RearrangementProfile> reciprocal_rearrangement(int n, LogGrid grid = {}) const;

  Weight scaled(double c) const;

 private:
  Kind kind_ = Kind::constant;
  double c_ = 1;
  double e1_ = 0, e2_ = 0;
  Monotonicity mono_ = Monotonicity::none;
  std::function<double(double)> radial_;
  std::function<double(std::span<const double>)> general_;
  std::shared_ptr<const GridWeight> grid_;
  std::string label_;
};

}  // namespace carleman
