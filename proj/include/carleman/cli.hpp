#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "carleman/error.hpp"
#include "carleman/harness.hpp"

namespace carleman::cli {

/// Process exit codes.
enum ExitCode : int { kOk = 0, kUsage = 1, kInvalidParams = 2, kNegativeVerdict = 3 };

/// Malformed or inconsistent experiment configuration.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error("config", what) {}
};

inline constexpr std::array<std::string_view, 7> kCommands = {"admissible", "constants", "verify", "sweep-tau",
                                                             "sweep-scale", "pitt",      "uc"};

/// Single test function: ball-bump (scale = radius), gaussian (scale = width), zero, or grid (path).
struct FunctionSpec {
  std::string kind = "ball-bump";
  double scale = 1;
  std::string path;
};

/// V = amplitude |x|^(s1, s2), or a grid file when path is set.
struct PotentialSpec {
  double s1 = 0;
  double s2 = 0;
  double amplitude = 1;
  std::string path;
};

struct FamilyConfig {
  std::string kind = "ball-bump";
  int count = 10;
  int max_degree = 4;
};

/// Everything one run needs. Serialises to and from a flat JSON object;
/// optional blocks are omitted when unset.
struct ExperimentConfig {
  std::string command;
  int n = 3;
  double p = 2, q = 2, gamma = 2, tau = 0;
  std::string param_case = "a";
  /// u = |x|^(-alpha1, -alpha2), v = |x|^(beta1, beta2) unless a grid file is given.
  std::array<double, 2> alpha{0, 0};
  std::array<double, 2> beta{0, 0};
  std::string u_grid, v_grid;
  FunctionSpec function;
  std::optional<FamilyConfig> family;
  std::uint64_t seed = 1;
  std::vector<double> taus{1, 2, 4, 8, 16};
  std::vector<double> lambdas{0.125, 0.21022410381342863, 0.3535533905932738, 0.5946035575013605, 1,
                              1.681792830507429, 2.8284271247461903, 4.756828460010884, 8};
  std::optional<GridSpec> grid;  ///< resolved to the per-dimension default when unset
  std::vector<double> direction;  ///< resolved to e_1 when empty
  double offset = 0;
  std::string route = "conjugated";
  std::optional<PotentialSpec> potential;
  bool compact_support = true;
  double c0 = 1;
  std::optional<double> c1;
  double domain_radius = 1;
  /// Diagnostics on u*: sup s^(-b1,-b2) int_0^s u* against sup s^(1-b1, 1-b2) u*.
  std::optional<std::array<double, 2>> sup_pair;
  std::string out = ".";
};

/// Throws ConfigError on unknown keys or wrongly typed values.
ExperimentConfig parse_config(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentConfig& c);

/// Default grid for dimension n: (L, N) = (12, 1024), (8, 256), (6, 64) for n = 1, 2, 3.
GridSpec default_grid(int n);

/// Fills in the grid and direction defaults and checks cross-field consistency.
void resolve(ExperimentConfig& c);

struct Outcome {
  nlohmann::json result;
  std::string verdict;
  bool negative = false;  ///< verdict maps to exit code 3
  std::string summary;    ///< one-line console text
  std::optional<std::string> csv;
};

/// Runs a resolved config. Library errors propagate.
Outcome run(const ExperimentConfig& c);

/// {"command", "config", "generated_at", "result", "verdict"}
nlohmann::json make_report(const ExperimentConfig& c, const Outcome& o, const std::string& generated_at);
std::string render(const nlohmann::json& report);

/// Byte comparison with every line mentioning "generated_at" removed.
bool same_report(std::string_view a, std::string_view b);

/// Command-line entry point; returns the exit code.
int main(int argc, char** argv);

}  // namespace carleman::cli
