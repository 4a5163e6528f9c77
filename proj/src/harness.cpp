#include "carleman/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <memory>
#include <sstream>
#include <thread>

#include "carleman/conditions.hpp"
#include "carleman/error.hpp"

namespace carleman {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

// Runs fn(i) for i < count on worker_count() threads; results land by index,
// so the outcome does not depend on scheduling.
template <typename T, typename Fn>
std::vector<T> parallel_map(std::size_t count, Fn fn) {
  std::vector<T> out(count);
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(worker_count()), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) out[i] = fn(i);
    });
  for (auto& t : pool) t.join();
  return out;
}

nlohmann::json num(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

double safe_pow(double x, double e) {
  if (x == 0) return e > 0 ? 0.0 : (e == 0 ? 1.0 : kInf);
  return std::pow(x, e);
}

struct Outcome {
  double ratio = kNaN;
  std::string error;
};

Outcome try_member(const FamilyMember& m, const Weight& u, const Weight& v, const ParamSet& ps, double tau,
                   const GridSpec& grid, const Direction& dir) {
  try {
    const GridFunction f = sample_member(m, grid.L, grid.N);
    return {carleman_ratio(f, u, v, ps, tau, dir).ratio, {}};
  } catch (const Error& e) {
    return {kNaN, e.what()};
  }
}

}  // namespace

int worker_count() {
  if (const char* env = std::getenv("CARLEMAN_THREADS")) {
    char* end = nullptr;
    const long k = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && k >= 1) return static_cast<int>(std::min(k, 256L));
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// ---------------------------------------------------------------------------

Potential Potential::power(double s1, double s2, double amplitude) {
  if (!std::isfinite(s1) || !std::isfinite(s2) || !std::isfinite(amplitude))
    throw DomainError("harness", "potential exponents and amplitude must be finite");
  Potential V;
  V.power_ = true;
  V.s1_ = s1;
  V.s2_ = s2;
  V.amp_ = amplitude;
  std::ostringstream os;
  os << amplitude << "*|x|^(" << s1 << "," << s2 << ")";
  V.label_ = os.str();
  return V;
}

Potential Potential::function(std::function<double(std::span<const double>)> f, std::string label) {
  Potential V;
  V.f_ = std::move(f);
  V.label_ = std::move(label);
  return V;
}

Potential Potential::grid(const GridFunction& g) {
  if (g.domain() != Domain::space) throw DomainError("harness", "potential grid must be spatial");
  auto data = std::make_shared<GridFunction>(g);
  return function(
      [data](std::span<const double> x) {
        const GridGeometry& geo = data->geometry();
        const double lo = geo.origin - 0.5 * geo.spacing;
        std::size_t flat = 0;
        for (int d = 0; d < geo.n; ++d) {
          const double t = (x[static_cast<std::size_t>(d)] - lo) / geo.spacing;
          if (t < 0 || t >= static_cast<double>(geo.N)) return 0.0;
          flat = flat * geo.N + static_cast<std::size_t>(t);
        }
        return data->values()[flat].real();
      },
      "grid");
}

double Potential::operator()(std::span<const double> x) const {
  if (!power_) return f_(x);
  double r2 = 0;
  for (double c : x) r2 += c * c;
  const double r = std::sqrt(r2);
  if (amp_ == 0) return 0;
  if (r == 0) return s1_ < 0 ? std::copysign(kInf, amp_) : (s1_ == 0 ? amp_ : 0.0);
  return amp_ * eval_piecewise_power(r, s1_, s2_);
}

Potential Potential::scaled(double c) const {
  Potential V = *this;
  if (power_) {
    V.amp_ *= c;
    std::ostringstream os;
    os << V.amp_ << "*|x|^(" << s1_ << "," << s2_ << ")";
    V.label_ = os.str();
  } else {
    auto f = f_;
    V.f_ = [f, c](std::span<const double> x) { return c * f(x); };
  }
  return V;
}

// ---------------------------------------------------------------------------

std::optional<ConditionBound> condition_bound(const Weight& u, const Weight& v, const ParamSet& ps, double tau) {
  const auto us = u.rearrangement(ps.n);
  const auto vr = v.reciprocal_rearrangement(ps.n);
  if (!us || !vr) return std::nullopt;
  ConditionBound b;
  b.A_u = A_u_tau(*us, ps, tau).value;
  b.A_v = ps.param_case == ParamCase::a ? A_v(*vr, ps).value : A_v_tilde(*vr, ps).value;
  b.product = (b.A_u == 0 || b.A_v == 0) ? 0.0 : b.A_u * b.A_v;
  return b;
}

InequalityReport carleman_ratio(const GridFunction& f, const Weight& u, const Weight& v, const ParamSet& ps,
                                double tau, const Direction& dir, GradientRoute route) {
  const GridGeometry& g = f.geometry();
  if (g.n != ps.n) throw DomainError("harness", "grid dimension differs from n");
  if (f.max_abs() == 0) throw DomainError("harness", "ratio undefined (0/0)");

  const std::vector<double> uw = sample_weight(g, u);
  const std::vector<double> vw = sample_weight(g, v);
  const GridFunction f1 = tilt(f, tau, dir);

  std::vector<GridFunction> grad;
  if (route == GradientRoute::conjugated) {
    grad = gradient(f1);
    for (int d = 0; d < g.n; ++d) {
      const double c = tau * dir.a[static_cast<std::size_t>(d)];
      if (c == 0) continue;
      auto out = grad[static_cast<std::size_t>(d)].values();
      const auto in = f1.values();
      for (std::size_t i = 0; i < out.size(); ++i) out[i] += c * in[i];
    }
  } else {
    for (GridFunction& c : gradient(f)) grad.push_back(tilt(c, tau, dir));
  }

  InequalityReport r;
  r.inequality = "carleman";
  r.lhs = weighted_norm(magnitudes(f1), uw, ps.q, g.cell_measure());
  r.rhs = weighted_norm(gradient_magnitude(grad), vw, ps.p, g.cell_measure());
  if (r.rhs == 0) throw DomainError("harness", "ratio undefined (0/0)");
  r.ratio = r.lhs / r.rhs;
  r.params = ps;
  r.p = ps.p;
  r.q = ps.q;
  r.tau = tau;
  r.direction = dir.a;
  r.offset = dir.b;
  r.grid = GridSpec{g.n, g.half_width(), g.N};
  r.u_label = u.label();
  r.v_label = v.label();
  r.bound = condition_bound(u, v, ps, tau);
  r.bound_name = ps.param_case == ParamCase::a ? "A_u(tau)*A_v" : "A_u(tau)*A_v_tilde";
  return r;
}

InequalityReport pitt_ratio(const GridFunction& f, const Weight& u, const Weight& w, double p, double q) {
  if (!(p > 1) || !(q > 1)) throw DomainError("harness", "pitt exponents must exceed 1");
  if (f.max_abs() == 0) throw DomainError("harness", "ratio undefined (0/0)");
  const GridFunction fh = fourier(f, DualLayout::midpoint);
  InequalityReport r;
  r.inequality = "pitt";
  r.lhs = weighted_norm(fh, u, q);
  r.rhs = weighted_norm(f, w, p);
  if (r.rhs == 0) throw DomainError("harness", "ratio undefined (0/0)");
  r.ratio = r.lhs / r.rhs;
  r.p = p;
  r.q = q;
  const GridGeometry& g = f.geometry();
  r.grid = GridSpec{g.n, g.half_width(), g.N};
  r.u_label = u.label();
  r.v_label = w.label();
  const auto us = u.rearrangement(g.n);
  const auto wr = w.reciprocal_rearrangement(g.n);
  if (us && wr) {
    const ConditionValue A = p <= q ? pitt_A1(*us, *wr, p, q) : pitt_A2(*us, *wr, p, q);
    r.bound = ConditionBound{A.value, 1.0, A.value};
    r.bound_name = p <= q ? "A1" : "A2";
  }
  return r;
}

// ---------------------------------------------------------------------------

EstimateResult estimate_constant(std::span<const FamilyMember> family, const Weight& u, const Weight& v,
                                 const ParamSet& ps, double tau, const GridSpec& grid, const Direction& dir,
                                 int max_evals) {
  if (family.empty()) throw DomainError("harness", "empty family");
  EstimateResult out;
  const auto outcomes = parallel_map<Outcome>(family.size(), [&](std::size_t i) {
    return try_member(family[i], u, v, ps, tau, grid, dir);
  });
  out.evaluations = static_cast<int>(family.size());
  std::size_t best = family.size();
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    out.member_ratios.push_back(outcomes[i].ratio);
    if (!std::isnan(outcomes[i].ratio) && (best == family.size() || outcomes[i].ratio > out.best_ratio)) {
      best = i;
      out.best_ratio = outcomes[i].ratio;
    }
  }
  if (best == family.size()) throw DomainError("harness", "no family member could be evaluated");
  out.best_member = family[best];
  out.bound = condition_bound(u, v, ps, tau);

  double step = 2;
  while (out.evaluations < max_evals && step > 1.001) {
    bool improved = false;
    for (std::size_t i = 0; i < out.best_member.scales.size() && !improved; ++i) {
      for (double factor : {step, 1 / step}) {
        if (out.evaluations >= max_evals) break;
        FamilyMember cand = out.best_member;
        cand.scales[i] *= factor;
        if (cand.reach() > 0.95 * grid.L) continue;
        const Outcome o = try_member(cand, u, v, ps, tau, grid, dir);
        ++out.evaluations;
        if (!std::isnan(o.ratio) && o.ratio > out.best_ratio) {
          out.best_ratio = o.ratio;
          out.best_member = std::move(cand);
          improved = true;
          break;
        }
      }
    }
    if (!improved) step = std::sqrt(step);
  }
  return out;
}

std::array<double, 3> fit_line(std::span<const double> x, std::span<const double> y) {
  const std::size_t m = x.size();
  if (m < 2 || y.size() != m) return {kNaN, kNaN, kNaN};
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0) return {kNaN, kNaN, kNaN};
  const double slope = sxy / sxx;
  const double icpt = my - slope * mx;
  double ss = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const double e = y[i] - (slope * x[i] + icpt);
    ss += e * e;
  }
  return {slope, icpt, std::sqrt(ss / static_cast<double>(m))};
}

SweepReport tau_sweep(std::span<const FamilyMember> family, const Weight& u, const Weight& v, const ParamSet& ps,
                      std::span<const double> taus, const GridSpec& grid, const Direction& dir) {
  if (family.empty()) throw DomainError("harness", "empty family");
  SweepReport rep;
  rep.variable = "tau";
  rep.params = ps;
  rep.grid = grid;
  const auto b1 = condition_bound(u, v, ps, 1.0);
  for (double tau : taus) {
    if (!(tau >= 0)) throw DomainError("harness", "tau values must be nonnegative");
    const auto outcomes = parallel_map<Outcome>(family.size(), [&](std::size_t i) {
      return try_member(family[i], u, v, ps, tau, grid, dir);
    });
    double best = kNaN;
    std::string err;
    for (const Outcome& o : outcomes) {
      if (std::isnan(o.ratio)) {
        if (err.empty()) err = o.error;
      } else if (std::isnan(best) || o.ratio > best) {
        best = o.ratio;
      }
    }
    rep.values.push_back(tau);
    rep.ratios.push_back(best);
    rep.errors.push_back(std::isnan(best) ? err : std::string());
    if (b1) rep.curve.push_back(tau > 0 ? std::max(1 / tau, 1.0) * b1->product : kInf);
  }

  std::vector<double> lx, ly;
  double r1 = kNaN, top = kNaN;
  for (std::size_t i = 0; i < rep.values.size(); ++i) {
    const double t = rep.values[i], r = rep.ratios[i];
    if (std::isnan(r)) continue;
    if (t > 0 && r > 0) {
      lx.push_back(std::log(t));
      ly.push_back(std::log(r));
    }
    if (std::abs(t - 1) <= 1e-12) r1 = r;
    if (t >= 1 - 1e-12) top = std::isnan(top) ? r : std::max(top, r);
  }
  const auto fit = fit_line(lx, ly);
  rep.slope = fit[0];
  rep.intercept = fit[1];
  rep.residual = fit[2];
  if (std::isnan(r1) || std::isnan(top)) {
    rep.verdict = "inconclusive";
    rep.note = "no ratio at tau = 1";
  } else {
    rep.verdict = top <= kUniformCap * r1 ? "uniform" : "non-uniform";
    std::ostringstream os;
    os << "max ratio over tau >= 1 is " << top / r1 << " x the tau = 1 ratio (cap " << kUniformCap << ")";
    rep.note = os.str();
  }
  return rep;
}

SweepReport scaling_sweep(const std::function<double(std::span<const double>)>& f, const GridSpec& base,
                          double alpha, double beta, const ParamSet& ps, double tau,
                          std::span<const double> lambdas, const Direction& dir) {
  if (base.n != ps.n) throw DomainError("harness", "grid dimension differs from n");
  const Weight u = Weight::power(-alpha, -alpha);
  const Weight v = Weight::power(beta, beta);
  SweepReport rep;
  rep.variable = "lambda";
  rep.params = ps;
  rep.grid = base;
  const auto outcomes = parallel_map<Outcome>(lambdas.size(), [&](std::size_t i) -> Outcome {
    const double lam = lambdas[i];
    try {
      if (!(lam > 0)) throw DomainError("harness", "lambda must be positive");
      Sampled s = sample(
          [&](std::span<const double> x) {
            double y[3];
            for (std::size_t d = 0; d < x.size(); ++d) y[d] = lam * x[d];
            return cplx(f(std::span<const double>(y, x.size())), 0.0);
          },
          base.n, base.L / lam, base.N);
      if (s.warning) throw BoundaryError("harness", s.message);
      return {carleman_ratio(s.f, u, v, ps, tau, dir).ratio, {}};
    } catch (const Error& e) {
      return {kNaN, e.what()};
    }
  });
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    rep.values.push_back(lambdas[i]);
    rep.ratios.push_back(outcomes[i].ratio);
    rep.errors.push_back(outcomes[i].error);
    if (!std::isnan(outcomes[i].ratio) && outcomes[i].ratio > 0) {
      lx.push_back(std::log(lambdas[i]));
      ly.push_back(std::log(outcomes[i].ratio));
    }
  }
  const auto fit = fit_line(lx, ly);
  rep.slope = fit[0];
  rep.intercept = fit[1];
  rep.residual = fit[2];
  const double n = ps.n;
  const double pred = alpha / ps.q - n / ps.q + beta / ps.p + n / ps.p - 1;
  rep.predicted_slope = pred;
  const std::size_t half = lx.size() / 2;
  if (lx.size() - half >= 2) {
    const auto right = fit_line(std::span<const double>(lx).subspan(half), std::span<const double>(ly).subspan(half));
    rep.right_half_slope = right[0];
  }
  if (lx.size() < 2) {
    rep.verdict = "inconclusive";
    rep.note = "fewer than two usable dilates";
  } else if (tau == 0) {
    if (std::abs(rep.slope) < 0.02) rep.verdict = "critical-invariant";
    else if (std::abs(pred) >= 0.02 && std::abs(rep.slope - pred) <= 0.05) rep.verdict = "blowup";
    else rep.verdict = "inconclusive";
  } else {
    rep.verdict = (rep.right_half_slope && *rep.right_half_slope <= 0.02) ? "bounded" : "inconclusive";
  }
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

double lr_exponent(const ParamSet& ps) {
  if (!ps.r_finite()) throw DomainError("harness", "r must be finite (p != q)");
  return ps.r;
}

}  // namespace

StripResult strip_epsilon(const Potential& V, const Weight& u, const Weight& v, const ParamSet& ps, double c1,
                          const Region& support_box) {
  const double r = lr_exponent(ps);
  if (!(c1 > 0)) throw DomainError("harness", "c1 must be positive");
  if (support_box.ball_radius > 0) throw DomainError("harness", "support must be a box");
  const int n = support_box.n;
  const int last = n - 1;
  const double floor = std::max(support_box.lo[last], 0.0);
  const double cap = support_box.hi[last];
  if (!(cap > floor)) throw DomainError("harness", "support box does not meet the half-space x_n > 0");

  const auto F = [&](std::span<const double> x) {
    const double a = std::abs(V(x));
    if (a == 0) return 0.0;
    const double core = a * safe_pow(v(x), 1 / ps.p) * safe_pow(u(x), -1 / ps.q);
    return safe_pow(core, r);
  };
  const auto g = [&](double eps) {
    Region strip = support_box;
    strip.lo[last] = floor;
    strip.hi[last] = eps;
    const CubatureResult c = integrate(F, strip);
    return c.divergent ? kInf : c1 * std::pow(c.value, 1 / r);
  };

  const double at_cap = g(cap);
  if (!std::isfinite(at_cap))
    throw DomainError("harness", "strip hypothesis fails: the weighted potential norm diverges");
  if (at_cap < 0.5) return {cap, at_cap, true};
  double lo = floor, hi = cap, glo = 0;
  while (hi - lo > 1e-4 * hi) {
    const double mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    if (gm < 0.5) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return {lo, glo, false};
}

bool potential_admissible(double s1, double s2, const PowerExponents& e, const ParamSet& ps, bool compact_support) {
  if (ps.param_case != ParamCase::a) throw DomainError("harness", "potential admissibility needs part (a)");
  const double r = lr_exponent(ps);
  const double nr = ps.n / r;
  const double lower = -nr - e.alpha1 / ps.q - e.beta1 / ps.p;
  if (!(s1 - lower > kExponentTol)) return false;
  if (compact_support) return true;
  const double upper = -e.alpha2 / ps.q - e.beta2 / ps.p - nr;
  return upper - s2 > kExponentTol;
}

ThresholdResult dirichlet_threshold(const Potential& V, const Weight& u, const Weight& v, const Region& domain,
                                    const ParamSet& ps, double c0) {
  const double r = lr_exponent(ps);
  if (!(c0 > 0)) throw DomainError("harness", "c0 must be positive");
  const auto F = [&](std::span<const double> x) {
    const double vp = std::max(V(x), 0.0);
    if (vp == 0) return 0.0;
    const double core = safe_pow(u(x), -1 / ps.q) * safe_pow(v(x), 1 / ps.p) * safe_pow(vp, 1 / ps.p);
    return safe_pow(core, r);
  };
  const CubatureResult c = integrate(F, domain);
  ThresholdResult out;
  if (c.divergent) {
    out.T = kInf;
    out.divergent = true;
    out.verdict = kVerdictNoConclusion;
    return out;
  }
  out.T = c0 * std::pow(c.value, 1 / r);
  out.unique = out.T < 1;
  out.verdict = out.unique ? kVerdictUnique : kVerdictNoConclusion;
  return out;
}

// ---------------------------------------------------------------------------

nlohmann::json to_json(const ParamSet& ps) {
  return {{"n", ps.n},           {"p", num(ps.p)},         {"q", num(ps.q)},
          {"gamma", num(ps.gamma)}, {"tau", num(ps.tau)},    {"case", std::string(to_string(ps.param_case))},
          {"p_dual", num(ps.p_dual)}, {"gamma_dual", num(ps.gamma_dual)}, {"r", num(ps.r)}};
}

nlohmann::json to_json(const GridSpec& g) { return {{"n", g.n}, {"L", num(g.L)}, {"N", g.N}}; }

namespace {

nlohmann::json bound_json(const std::optional<ConditionBound>& b, const std::string& name) {
  if (!b) return nullptr;
  return {{"name", name}, {"A_u", num(b->A_u)}, {"A_v", num(b->A_v)}, {"value", num(b->product)}};
}

}  // namespace

nlohmann::json to_json(const InequalityReport& r) {
  nlohmann::json j = {{"inequality", r.inequality}, {"lhs", num(r.lhs)},       {"rhs", num(r.rhs)},
                      {"ratio", num(r.ratio)},      {"p", num(r.p)},           {"q", num(r.q)},
                      {"tau", num(r.tau)},          {"grid", to_json(r.grid)}, {"u", r.u_label},
                      {"v", r.v_label},             {"f", r.f_label}};
  j["params"] = r.params ? to_json(*r.params) : nlohmann::json(nullptr);
  j["direction"] = r.direction;
  j["offset"] = num(r.offset);
  j["bound"] = bound_json(r.bound, r.bound_name);
  return j;
}

nlohmann::json to_json(const SweepReport& r) {
  nlohmann::json points = nlohmann::json::array();
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    nlohmann::json p = {{r.variable, num(r.values[i])}, {"ratio", num(r.ratios[i])}};
    if (i < r.curve.size()) p["bound"] = num(r.curve[i]);
    if (i < r.errors.size() && !r.errors[i].empty()) p["error"] = r.errors[i];
    points.push_back(std::move(p));
  }
  nlohmann::json j = {{"variable", r.variable}, {"points", points},          {"slope", num(r.slope)},
                      {"intercept", num(r.intercept)}, {"residual", num(r.residual)}, {"verdict", r.verdict},
                      {"grid", to_json(r.grid)},     {"note", r.note}};
  j["predicted_slope"] = r.predicted_slope ? num(*r.predicted_slope) : nlohmann::json(nullptr);
  j["right_half_slope"] = r.right_half_slope ? num(*r.right_half_slope) : nlohmann::json(nullptr);
  j["params"] = r.params ? to_json(*r.params) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json to_json(const EstimateResult& r) {
  nlohmann::json ratios = nlohmann::json::array();
  for (double x : r.member_ratios) ratios.push_back(num(x));
  nlohmann::json scales = nlohmann::json::object();
  const auto names = r.best_member.scale_names();
  for (std::size_t k = 0; k < names.size() && k < r.best_member.scales.size(); ++k)
    scales[names[k]] = num(r.best_member.scales[k]);
  return {{"estimate", num(r.best_ratio)},
          {"best_member", r.best_member.label()},
          {"best_scales", scales},
          {"member_ratios", ratios},
          {"evaluations", r.evaluations},
          {"bound", bound_json(r.bound, "A_u(tau)*A_v")}};
}

std::string to_csv(const SweepReport& r) {
  std::ostringstream os;
  os << r.variable << ",ratio,bound,error\n";
  char buf[64];
  const auto put = [&](double x) {
    std::snprintf(buf, sizeof buf, "%.17g", x);
    os << buf;
  };
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    put(r.values[i]);
    os << ',';
    put(r.ratios[i]);
    os << ',';
    if (i < r.curve.size()) put(r.curve[i]);
    os << ',';
    std::string e = i < r.errors.size() ? r.errors[i] : "";
    std::replace(e.begin(), e.end(), ',', ';');
    std::replace(e.begin(), e.end(), '\n', ' ');
    os << e << '\n';
  }
  return os.str();
}

}  // namespace carleman
