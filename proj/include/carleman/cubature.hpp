#pragma once

#include <array>
#include <functional>
#include <span>

namespace carleman {

/// Axis-aligned box in R^n (n <= 3), optionally intersected with the ball |x| < radius.
struct Region {
  int n = 1;
  std::array<double, 3> lo{0, 0, 0};
  std::array<double, 3> hi{0, 0, 0};
  double ball_radius = 0;  ///< 0: plain box

  static Region box(int n, std::span<const double> lo, std::span<const double> hi);
  static Region ball(int n, double radius);
  bool contains(std::span<const double> x) const;
};

struct CubatureResult {
  double value = 0;
  bool divergent = false;
};

/// Integral of a nonnegative F over the region, where F may be singular
/// (power-like) at the origin and smooth elsewhere.
///
/// Boxes are split at the origin. Each piece with the origin at a corner is
/// halved repeatedly towards it; the shells between consecutive levels are
/// integrated with 8-point Gauss-Legendre per axis and the level sums are
/// closed with a geometric tail once their ratio settles. A ratio >= 1 means
/// F is not integrable at the origin. Boxes cut by the ball boundary are
/// subdivided to a fixed depth and finished with an indicator rule.
CubatureResult integrate(const std::function<double(std::span<const double>)>& F, const Region& region);

}  // namespace carleman
