#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "carleman/spectral.hpp"

namespace carleman {

enum class FamilyKind { ball_bump, gaussian_poly, translated_bump, dilated_bump };

std::string_view to_string(FamilyKind k);
FamilyKind parse_family_kind(std::string_view s);

/// exp(-1/(1 - r^2)) for r < 1, else 0.
double standard_bump(double r);

/// One member of a test family. The positive entries of `scales` are the
/// continuous parameters a local search may rescale:
///   ball-bump, translated-bump   {radius}
///   gaussian-poly                {width}
///   dilated-bump                 {lambda, core, kappa}
/// A dilated bump is bump(lambda |x|) (core^2 + |lambda x|^2)^(-kappa/2).
struct FamilyMember {
  FamilyKind kind = FamilyKind::ball_bump;
  int n = 1;
  std::vector<double> center;  ///< size n
  std::vector<double> scales;
  /// gaussian-poly: sum of poly[k] * y^terms[k], y = (x - center)/width
  std::vector<double> poly;
  std::vector<std::array<int, 3>> terms;
  int degree = 0;

  double operator()(std::span<const double> x) const;
  /// Radius of a ball around the origin outside which the member is negligible.
  double reach() const;
  std::vector<std::string> scale_names() const;
  std::string label() const;
};

/// Ranges are relative to the box half-width L so every member stays well inside.
struct FamilySpec {
  FamilyKind kind = FamilyKind::ball_bump;
  int count = 10;
  std::uint64_t seed = 1;
  int max_degree = 4;
};

/// Deterministic members for a box of half-width L (mt19937_64 seeded with spec.seed).
std::vector<FamilyMember> make_family(const FamilySpec& spec, int n, double half_width);

/// Samples a member; throws BoundaryError when it is not negligible on the box boundary.
GridFunction sample_member(const FamilyMember& m, double half_width, std::size_t N);

}  // namespace carleman
