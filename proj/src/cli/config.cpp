#include <algorithm>
#include <cmath>
#include <filesystem>
#include <set>

#include "carleman/cli.hpp"

namespace carleman::cli {

namespace {

using nlohmann::json;

void require_object(const json& j, const std::string& where, const std::set<std::string>& keys) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [k, _] : j.items())
    if (!keys.contains(k)) throw ConfigError("unknown key \"" + k + "\" in " + where);
}

double get_number(const json& j, const std::string& key) {
  const json& v = j.at(key);
  if (!v.is_number()) throw ConfigError("\"" + key + "\" must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError("\"" + key + "\" must be finite");
  return x;
}

int get_int(const json& j, const std::string& key) {
  const json& v = j.at(key);
  if (!v.is_number_integer()) throw ConfigError("\"" + key + "\" must be an integer");
  return v.get<int>();
}

std::string get_string(const json& j, const std::string& key) {
  const json& v = j.at(key);
  if (!v.is_string()) throw ConfigError("\"" + key + "\" must be a string");
  return v.get<std::string>();
}

bool get_bool(const json& j, const std::string& key) {
  const json& v = j.at(key);
  if (!v.is_boolean()) throw ConfigError("\"" + key + "\" must be true or false");
  return v.get<bool>();
}

std::vector<double> get_list(const json& j, const std::string& key) {
  const json& v = j.at(key);
  if (!v.is_array()) throw ConfigError("\"" + key + "\" must be a list of numbers");
  std::vector<double> out;
  for (const json& x : v) {
    if (!x.is_number() || !std::isfinite(x.get<double>()))
      throw ConfigError("\"" + key + "\" must be a list of finite numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

std::array<double, 2> get_pair(const json& j, const std::string& key) {
  const auto v = get_list(j, key);
  if (v.size() != 2) throw ConfigError("\"" + key + "\" must have two entries");
  return {v[0], v[1]};
}

FunctionSpec parse_function(const json& j) {
  require_object(j, "function", {"kind", "scale", "path"});
  FunctionSpec f;
  if (j.contains("kind")) f.kind = get_string(j, "kind");
  if (j.contains("scale")) f.scale = get_number(j, "scale");
  if (j.contains("path")) f.path = get_string(j, "path");
  static const std::set<std::string> kinds = {"ball-bump", "gaussian", "zero", "grid"};
  if (!kinds.contains(f.kind)) throw ConfigError("unknown function kind \"" + f.kind + "\"");
  if (!(f.scale > 0)) throw ConfigError("function scale must be positive");
  if ((f.kind == "grid") != !f.path.empty()) throw ConfigError("a path is required for, and only for, grid functions");
  return f;
}

FamilyConfig parse_family(const json& j) {
  require_object(j, "family", {"kind", "count", "max_degree"});
  FamilyConfig f;
  if (j.contains("kind")) f.kind = get_string(j, "kind");
  if (j.contains("count")) f.count = get_int(j, "count");
  if (j.contains("max_degree")) f.max_degree = get_int(j, "max_degree");
  try {
    parse_family_kind(f.kind);
  } catch (const Error&) {
    throw ConfigError("unknown family kind \"" + f.kind + "\"");
  }
  if (f.count < 1) throw ConfigError("family count must be at least 1");
  if (f.max_degree < 0 || f.max_degree > 4) throw ConfigError("family max_degree must be in 0..4");
  return f;
}

PotentialSpec parse_potential(const json& j) {
  require_object(j, "potential", {"s1", "s2", "amplitude", "path"});
  PotentialSpec v;
  if (j.contains("s1")) v.s1 = get_number(j, "s1");
  if (j.contains("s2")) v.s2 = get_number(j, "s2");
  if (j.contains("amplitude")) v.amplitude = get_number(j, "amplitude");
  if (j.contains("path")) v.path = get_string(j, "path");
  return v;
}

GridSpec parse_grid(const json& j) {
  require_object(j, "grid", {"n", "L", "N"});
  GridSpec g;
  g.n = j.contains("n") ? get_int(j, "n") : 0;
  if (!j.contains("L") || !j.contains("N")) throw ConfigError("grid needs L and N");
  g.L = get_number(j, "L");
  const int N = get_int(j, "N");
  if (N < 16 || (N & (N - 1)) != 0) throw ConfigError("grid N must be a power of two, at least 16");
  g.N = static_cast<std::size_t>(N);
  if (!(g.L > 0)) throw ConfigError("grid L must be positive");
  return g;
}

}  // namespace

ExperimentConfig parse_config(const json& j) {
  require_object(j, "config",
                 {"command", "n", "p", "q", "gamma", "tau", "case", "alpha", "beta", "u_grid", "v_grid", "function",
                  "family", "seed", "taus", "lambdas", "grid", "direction", "offset", "route", "potential",
                  "compact_support", "c0", "c1", "domain_radius", "sup_pair", "out"});
  ExperimentConfig c;
  if (j.contains("command")) {
    c.command = get_string(j, "command");
    if (std::find(kCommands.begin(), kCommands.end(), c.command) == kCommands.end())
      throw ConfigError("unknown command \"" + c.command + "\"");
  }
  if (j.contains("n")) c.n = get_int(j, "n");
  if (j.contains("p")) c.p = get_number(j, "p");
  if (j.contains("q")) c.q = get_number(j, "q");
  if (j.contains("gamma")) c.gamma = get_number(j, "gamma");
  if (j.contains("tau")) c.tau = get_number(j, "tau");
  if (j.contains("case")) {
    c.param_case = get_string(j, "case");
    if (c.param_case != "a" && c.param_case != "b") throw ConfigError("case must be \"a\" or \"b\"");
  }
  if (j.contains("alpha")) c.alpha = get_pair(j, "alpha");
  if (j.contains("beta")) c.beta = get_pair(j, "beta");
  if (j.contains("u_grid")) c.u_grid = get_string(j, "u_grid");
  if (j.contains("v_grid")) c.v_grid = get_string(j, "v_grid");
  if (j.contains("function")) c.function = parse_function(j.at("function"));
  if (j.contains("family")) c.family = parse_family(j.at("family"));
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) throw ConfigError("\"seed\" must be a nonnegative integer");
    c.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("taus")) c.taus = get_list(j, "taus");
  if (j.contains("lambdas")) c.lambdas = get_list(j, "lambdas");
  if (j.contains("grid")) c.grid = parse_grid(j.at("grid"));
  if (j.contains("direction")) c.direction = get_list(j, "direction");
  if (j.contains("offset")) c.offset = get_number(j, "offset");
  if (j.contains("route")) {
    c.route = get_string(j, "route");
    if (c.route != "conjugated" && c.route != "direct") throw ConfigError("route must be conjugated or direct");
  }
  if (j.contains("potential")) c.potential = parse_potential(j.at("potential"));
  if (j.contains("compact_support")) c.compact_support = get_bool(j, "compact_support");
  if (j.contains("c0")) c.c0 = get_number(j, "c0");
  if (j.contains("c1")) c.c1 = get_number(j, "c1");
  if (j.contains("domain_radius")) c.domain_radius = get_number(j, "domain_radius");
  if (j.contains("sup_pair")) c.sup_pair = get_pair(j, "sup_pair");
  if (j.contains("out")) c.out = get_string(j, "out");
  return c;
}

json to_json(const ExperimentConfig& c) {
  json j = {{"n", c.n},
            {"p", c.p},
            {"q", c.q},
            {"gamma", c.gamma},
            {"tau", c.tau},
            {"case", c.param_case},
            {"alpha", c.alpha},
            {"beta", c.beta},
            {"function", {{"kind", c.function.kind}, {"scale", c.function.scale}}},
            {"seed", c.seed},
            {"taus", c.taus},
            {"lambdas", c.lambdas},
            {"offset", c.offset},
            {"route", c.route},
            {"compact_support", c.compact_support},
            {"c0", c.c0},
            {"domain_radius", c.domain_radius},
            {"out", c.out}};
  if (!c.command.empty()) j["command"] = c.command;
  if (!c.u_grid.empty()) j["u_grid"] = c.u_grid;
  if (!c.v_grid.empty()) j["v_grid"] = c.v_grid;
  if (!c.function.path.empty()) j["function"]["path"] = c.function.path;
  if (c.family)
    j["family"] = {{"kind", c.family->kind}, {"count", c.family->count}, {"max_degree", c.family->max_degree}};
  if (c.grid) j["grid"] = {{"n", c.grid->n}, {"L", c.grid->L}, {"N", c.grid->N}};
  if (!c.direction.empty()) j["direction"] = c.direction;
  if (c.potential) {
    j["potential"] = {{"s1", c.potential->s1}, {"s2", c.potential->s2}, {"amplitude", c.potential->amplitude}};
    if (!c.potential->path.empty()) j["potential"]["path"] = c.potential->path;
  }
  if (c.c1) j["c1"] = *c.c1;
  if (c.sup_pair) j["sup_pair"] = *c.sup_pair;
  return j;
}

GridSpec default_grid(int n) {
  switch (n) {
    case 1: return {1, 12, 1024};
    case 2: return {2, 8, 256};
    case 3: return {3, 6, 64};
    default: throw ConfigError("grids support n = 1, 2, 3");
  }
}

void resolve(ExperimentConfig& c) {
  if (c.command.empty()) throw ConfigError("no command given");
  const bool needs_grid = c.command == "verify" || c.command == "sweep-tau" || c.command == "sweep-scale" ||
                          c.command == "pitt";
  if (!c.grid) {
    if (needs_grid) c.grid = default_grid(c.n);
  } else {
    if (c.grid->n == 0) c.grid->n = c.n;
    if (c.grid->n != c.n) throw ConfigError("grid dimension differs from n");
  }
  if (c.direction.empty()) {
    c.direction.assign(static_cast<std::size_t>(std::max(c.n, 1)), 0.0);
    c.direction[0] = 1;
  }
  if (c.direction.size() != static_cast<std::size_t>(c.n)) throw ConfigError("direction must have n components");
  for (const std::string* path : {&c.u_grid, &c.v_grid, &c.function.path})
    if (!path->empty() && !std::filesystem::exists(*path)) throw ConfigError("file not found: " + *path);
  if (c.potential && !c.potential->path.empty() && !std::filesystem::exists(c.potential->path))
    throw ConfigError("file not found: " + c.potential->path);
  if (c.command == "sweep-tau" && !c.family) c.family = FamilyConfig{};
  if (!(c.c0 > 0)) throw ConfigError("c0 must be positive");
  if (c.c1 && !(*c.c1 > 0)) throw ConfigError("c1 must be positive");
  if (!(c.domain_radius > 0)) throw ConfigError("domain_radius must be positive");
}

}  // namespace carleman::cli
