#include <cmath>
#include <sstream>

#include "carleman/cli.hpp"
#include "carleman/conditions.hpp"
#include "carleman/grid_io.hpp"

namespace carleman::cli {

namespace {

using nlohmann::json;

// Sufficiency sanity cap: an empirical ratio above this multiple of the
// conditions-side bound is reported as a violation.
constexpr double kBoundSlack = 100;

json num(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

json to_json(const ConditionValue& c) {
  return {{"value", num(c.value)},
          {"argmax_s", num(c.argmax_s)},
          {"method", std::string(to_string(c.method))},
          {"divergence", std::string(to_string(c.divergence))},
          {"degenerate", c.degenerate}};
}

ParamSet params_of(const ExperimentConfig& c) {
  return validate_params(c.n, c.p, c.q, c.gamma, c.tau, parse_param_case(c.param_case));
}

Weight u_weight(const ExperimentConfig& c) {
  if (!c.u_grid.empty()) return Weight::grid(load_grid_weight(c.u_grid));
  if (c.alpha[0] == 0 && c.alpha[1] == 0) return Weight::constant(1);
  return Weight::power(-c.alpha[0], -c.alpha[1]);
}

Weight v_weight(const ExperimentConfig& c) {
  if (!c.v_grid.empty()) return Weight::grid(load_grid_weight(c.v_grid));
  if (c.beta[0] == 0 && c.beta[1] == 0) return Weight::constant(1);
  return Weight::power(c.beta[0], c.beta[1]);
}

RearrangementProfile u_star(const ExperimentConfig& c, int n) {
  const auto r = u_weight(c).rearrangement(n);
  if (!r) throw ConfigError("u has no rearrangement (it must be radially non-increasing or a grid)");
  return *r;
}

RearrangementProfile v_recip_star(const ExperimentConfig& c, int n) {
  if (!c.v_grid.empty()) {
    const GridWeight g = load_grid_weight(c.v_grid);
    std::vector<double> inv;
    inv.reserve(g.values().size());
    for (double x : g.values()) {
      if (!(x > 0)) throw ConfigError("v grid must be positive to rearrange 1/v");
      inv.push_back(1 / x);
    }
    return rearrange_grid(GridWeight(g.dimension(), g.half_width(), g.samples_per_axis(), std::move(inv)));
  }
  const auto r = v_weight(c).reciprocal_rearrangement(n);
  if (!r) throw ConfigError("1/v has no rearrangement (v must be radially non-decreasing or a grid)");
  return *r;
}

std::function<double(std::span<const double>)> test_function(const FunctionSpec& f) {
  const double s = f.scale;
  const auto radius = [](std::span<const double> x) {
    double r2 = 0;
    for (double c : x) r2 += c * c;
    return std::sqrt(r2);
  };
  if (f.kind == "ball-bump") return [=](std::span<const double> x) { return standard_bump(radius(x) / s); };
  if (f.kind == "gaussian")
    return [=](std::span<const double> x) {
      const double r = radius(x) / s;
      return std::exp(-0.5 * r * r);
    };
  if (f.kind == "zero") return [](std::span<const double>) { return 0.0; };
  throw ConfigError("function kind \"" + f.kind + "\" has no closed form");
}

GridFunction sampled_function(const ExperimentConfig& c) {
  if (c.function.kind == "grid") {
    GridFunction g = load_grid_function(c.function.path);
    const GridGeometry& geo = g.geometry();
    if (geo.n != c.grid->n || geo.N != c.grid->N || std::abs(geo.half_width() - c.grid->L) > 1e-12 * c.grid->L)
      throw ConfigError("function grid does not match the configured grid");
    return g;
  }
  const auto fn = test_function(c.function);
  Sampled s = sample([&](std::span<const double> x) { return cplx(fn(x), 0.0); }, c.n, c.grid->L, c.grid->N);
  if (s.warning) throw BoundaryError("cli", s.message);
  return std::move(s.f);
}

Potential potential_of(const ExperimentConfig& c) {
  if (!c.potential) throw ConfigError("this command needs a potential");
  if (!c.potential->path.empty()) return Potential::grid(load_grid_function(c.potential->path)).scaled(c.potential->amplitude);
  return Potential::power(c.potential->s1, c.potential->s2, c.potential->amplitude);
}

// Verdict for an empirical ratio against a conditions-side bound.
std::string bound_verdict(double ratio, const std::optional<ConditionBound>& b) {
  if (!b) return "no bound";
  if (!std::isfinite(b->product)) return "no finite bound";
  return ratio <= kBoundSlack * b->product ? "consistent" : "violated";
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

Necessity worse(Necessity a, Necessity b) {
  const auto rank = [](Necessity x) { return x == Necessity::exact ? 0 : (x == Necessity::subcritical ? 1 : 2); };
  return rank(a) >= rank(b) ? a : b;
}

// ---------------------------------------------------------------------------

Outcome cmd_admissible(const ExperimentConfig& c) {
  const ParamSet ps = params_of(c);
  Outcome o;
  o.result["params"] = carleman::to_json(ps);
  if (ps.param_case == ParamCase::b) {
    o.verdict = "valid";
    o.summary = "valid part (b) tuple; part (b) has no power-weight region";
    o.result["region"] = nullptr;
    return o;
  }
  const PowerRegion reg = admissible_powers(ps);
  const PowerExponents e{c.alpha[0], c.alpha[1], c.beta[0], c.beta[1]};
  const bool inside = reg.contains(e);
  const Necessity near = necessity_check(e.alpha1, e.beta1, ps);
  const Necessity far = necessity_check(e.alpha2, e.beta2, ps);
  const Necessity overall = worse(near, far);
  o.result["region"] = {{"alpha1_max", num(reg.alpha1_max)},
                        {"alpha2_min", num(reg.alpha2_min)},
                        {"beta1_max", num(reg.beta1_max)},
                        {"beta2_min", num(reg.beta2_min)}};
  o.result["admissible"] = inside;
  o.result["necessity"] = {{"near_origin", std::string(to_string(near))},
                           {"at_infinity", std::string(to_string(far))},
                           {"overall", std::string(to_string(overall))}};
  std::string pot;
  if (c.potential && c.potential->path.empty()) {
    if (ps.r_finite()) {
      const bool ok = potential_admissible(c.potential->s1, c.potential->s2, e, ps, c.compact_support);
      o.result["potential_admissible"] = ok;
      pot = ok ? ", potential admissible" : ", potential not admissible";
    } else {
      o.result["potential_admissible"] = nullptr;
      o.result["potential_note"] = "potential admissibility needs p != q";
    }
  }
  o.verdict = inside ? (overall == Necessity::violated ? "necessity violated" : "admissible") : "not admissible";
  o.negative = !inside || overall == Necessity::violated;
  o.summary = (inside ? "admissible" : "not admissible") + std::string(", necessity ") +
              std::string(to_string(overall)) + pot;
  return o;
}

Outcome cmd_constants(const ExperimentConfig& c) {
  const ParamSet ps = params_of(c);
  const RearrangementProfile us = u_star(c, ps.n);
  const RearrangementProfile vr = v_recip_star(c, ps.n);
  Outcome o;
  o.result["params"] = carleman::to_json(ps);
  const ConditionValue au = A_u_tau(us, ps, ps.tau);
  o.result["A_u"] = to_json(au);
  std::ostringstream s;
  s << "A_u(" << fmt(ps.tau) << ") = " << fmt(au.value);
  if (ps.param_case == ParamCase::a) {
    const ConditionValue av = A_v(vr, ps);
    o.result["A_v"] = to_json(av);
    s << ", A_v = " << fmt(av.value);
    try {
      const SimplifiedCase sc = simplified_case(ps);
      o.result["A_u1_simplified"] = to_json(A_u1_simplified(us, ps));
      o.result["A_u1_simplified"]["case"] = std::string(to_string(sc));
    } catch (const DomainError&) {
      o.result["A_u1_simplified"] = nullptr;
    }
  } else {
    const ConditionValue avt = A_v_tilde(vr, ps);
    o.result["A_v_tilde"] = to_json(avt);
    s << ", A_v_tilde = " << fmt(avt.value);
  }
  if (ps.p <= ps.q) {
    const ConditionValue a1 = pitt_A1(us, vr, ps.p, ps.q);
    o.result["pitt_A1"] = to_json(a1);
    s << ", pitt A1 = " << fmt(a1.value);
  } else {
    const ConditionValue a2 = pitt_A2(us, vr, ps.p, ps.q);
    o.result["pitt_A2"] = to_json(a2);
    s << ", pitt A2 = " << fmt(a2.value);
  }
  if (c.sup_pair) {
    const SupPairResult sp = sup_pair_AB(us, (*c.sup_pair)[0], (*c.sup_pair)[1]);
    o.result["sup_pair"] = {{"A", to_json(sp.A)},
                            {"B", to_json(sp.B)},
                            {"ratio", num(sp.ratio)},
                            {"beta1_at_most_one", sp.beta1_at_most_one}};
  }
  o.verdict = "computed";
  o.summary = s.str();
  return o;
}

Outcome cmd_verify(const ExperimentConfig& c) {
  const ParamSet ps = params_of(c);
  const Weight u = u_weight(c), v = v_weight(c);
  const Direction dir = Direction::make(c.direction, c.offset);
  const GradientRoute route = c.route == "direct" ? GradientRoute::direct : GradientRoute::conjugated;
  Outcome o;
  const InequalityReport rep = carleman_ratio(sampled_function(c), u, v, ps, ps.tau, dir, route);
  o.result["ratio"] = carleman::to_json(rep);
  std::string verdict = bound_verdict(rep.ratio, rep.bound);
  std::ostringstream s;
  s << "ratio " << fmt(rep.ratio);
  if (rep.bound) s << ", bound A_u*A_v = " << fmt(rep.bound->product);
  if (c.family) {
    const FamilySpec spec{parse_family_kind(c.family->kind), c.family->count, c.seed, c.family->max_degree};
    const auto members = make_family(spec, ps.n, c.grid->L);
    const EstimateResult est = estimate_constant(members, u, v, ps, ps.tau, *c.grid, dir);
    o.result["estimate"] = carleman::to_json(est);
    s << ", family estimate " << fmt(est.best_ratio);
    if (bound_verdict(est.best_ratio, est.bound) == "violated") verdict = "violated";
  }
  o.verdict = verdict;
  o.negative = verdict == "violated";
  o.summary = s.str() + " (" + verdict + ")";
  return o;
}

Outcome cmd_sweep_tau(const ExperimentConfig& c) {
  const ParamSet ps = params_of(c);
  const FamilySpec spec{parse_family_kind(c.family->kind), c.family->count, c.seed, c.family->max_degree};
  const auto members = make_family(spec, ps.n, c.grid->L);
  const SweepReport rep =
      tau_sweep(members, u_weight(c), v_weight(c), ps, c.taus, *c.grid, Direction::make(c.direction, c.offset));
  Outcome o;
  o.result["sweep"] = carleman::to_json(rep);
  o.verdict = rep.verdict;
  o.negative = rep.verdict != "uniform";
  o.summary = rep.verdict + ": " + rep.note;
  o.csv = to_csv(rep);
  return o;
}

Outcome cmd_sweep_scale(const ExperimentConfig& c) {
  const ParamSet ps = params_of(c);
  if (c.alpha[0] != c.alpha[1] || c.beta[0] != c.beta[1])
    throw ConfigError("sweep-scale needs pure powers (alpha and beta with equal entries)");
  if (!c.u_grid.empty() || !c.v_grid.empty()) throw ConfigError("sweep-scale needs power weights");
  const SweepReport rep = scaling_sweep(test_function(c.function), *c.grid, c.alpha[0], c.beta[0], ps, ps.tau,
                                        c.lambdas, Direction::make(c.direction, c.offset));
  Outcome o;
  o.result["sweep"] = carleman::to_json(rep);
  o.verdict = rep.verdict;
  o.negative = rep.verdict == "blowup" || rep.verdict == "inconclusive";
  std::ostringstream s;
  s << rep.verdict << ": fitted slope " << fmt(rep.slope);
  if (rep.predicted_slope) s << ", predicted " << fmt(*rep.predicted_slope);
  o.summary = s.str();
  o.csv = to_csv(rep);
  return o;
}

Outcome cmd_pitt(const ExperimentConfig& c) {
  if (!(c.p > 1)) throw ParamError("p must exceed 1");
  if (!(c.q > 1)) throw ParamError("q must exceed 1");
  const InequalityReport rep = pitt_ratio(sampled_function(c), u_weight(c), v_weight(c), c.p, c.q);
  Outcome o;
  o.result["ratio"] = carleman::to_json(rep);
  o.verdict = bound_verdict(rep.ratio, rep.bound);
  o.negative = o.verdict == "violated";
  o.summary = "pitt ratio " + fmt(rep.ratio) + " (" + o.verdict + ")";
  return o;
}

Outcome cmd_uc(const ExperimentConfig& c) {
  const ParamSet ps = params_of(c);
  const Weight u = u_weight(c), v = v_weight(c);
  const Potential V = potential_of(c);
  Outcome o;
  o.result["params"] = carleman::to_json(ps);
  const ThresholdResult t = dirichlet_threshold(V, u, v, Region::ball(ps.n, c.domain_radius), ps, c.c0);
  o.result["threshold"] = {{"T", num(t.T)}, {"divergent", t.divergent}, {"verdict", t.verdict},
                           {"conditional_on_c0", c.c0}};
  std::ostringstream s;
  s << "T = " << fmt(t.T) << " (" << t.verdict << ")";
  if (c.c1) {
    std::vector<double> lo(static_cast<std::size_t>(ps.n), -c.domain_radius), hi(lo.size(), c.domain_radius);
    lo.back() = 0;
    const StripResult st = strip_epsilon(V, u, v, ps, *c.c1, Region::box(ps.n, lo, hi));
    o.result["strip"] = {{"epsilon", num(st.epsilon)}, {"norm", num(st.norm)}, {"capped", st.capped}};
    s << ", strip epsilon " << fmt(st.epsilon);
  }
  if (ps.param_case == ParamCase::a && c.potential->path.empty() && c.u_grid.empty() && c.v_grid.empty()) {
    const bool ok = potential_admissible(c.potential->s1, c.potential->s2,
                                         {c.alpha[0], c.alpha[1], c.beta[0], c.beta[1]}, ps, c.compact_support);
    o.result["potential_admissible"] = ok;
  }
  o.verdict = t.verdict;
  o.negative = !t.unique;
  o.summary = s.str();
  return o;
}

}  // namespace

Outcome run(const ExperimentConfig& c) {
  if (c.command == "admissible") return cmd_admissible(c);
  if (c.command == "constants") return cmd_constants(c);
  if (c.command == "verify") return cmd_verify(c);
  if (c.command == "sweep-tau") return cmd_sweep_tau(c);
  if (c.command == "sweep-scale") return cmd_sweep_scale(c);
  if (c.command == "pitt") return cmd_pitt(c);
  if (c.command == "uc") return cmd_uc(c);
  throw ConfigError("unknown command \"" + c.command + "\"");
}

}  // namespace carleman::cli
