#pragma once

#include <functional>
#include <string_view>

#include "carleman/profile.hpp"

namespace carleman {

/// Where a sup or an integral over s in (0, inf) blows up.
enum class Divergence { none, at_zero, at_infinity, both };

std::string_view to_string(Divergence d);
Divergence merge(Divergence a, Divergence b);

struct SupResult {
  double value = 0;   ///< +inf when divergent
  double argmax = 0;  ///< s attaining the maximum (or the divergent endpoint)
  Divergence divergence = Divergence::none;
};

/// Supremum over s > 0 of F(s).
///
/// F is scanned on the log grid, then the maximum is polished by golden
/// section in log s between the neighbours of the best scan point. An
/// endpoint counts as divergent when F is still increasing towards it, F
/// there exceeds the interior maximum (middle half of the scan), and either
/// the excess is more than tenfold or the log-log growth rate over the last
/// decade is at least kGrowthSlope.
SupResult sup_over_scan(const std::function<double(double)>& F, const LogGrid& grid = {});

/// Minimum log-log slope counted as power-law growth at a scan endpoint.
inline constexpr double kGrowthSlope = 0.01;

struct IntegralResult {
  double value = 0;
  Divergence divergence = Divergence::none;
};

/// Integral over s in (0, inf) of g(s) ds, given h(s) = s g(s), the
/// integrand per unit log s. Segments are integrated log-linearly; the two
/// tails are closed with the local power law of h over the outermost decade,
/// and are declared divergent when that power law does not decay.
IntegralResult integrate_over_log_scale(const std::function<double(double)>& h,
                                        const LogGrid& grid = {});

/// Minimum decay exponent of h accepted as convergent at either tail.
inline constexpr double kTailDecay = 1e-6;

}  // namespace carleman
