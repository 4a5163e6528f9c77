#include "carleman/weights.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include "carleman/error.hpp"

namespace carleman {

double eval_piecewise_power(double t, double beta1, double beta2) {
  if (!(t > 0)) throw DomainError("weights", "piecewise power needs t > 0");
  return std::pow(t, t <= 1 ? beta1 : beta2);
}

double unit_ball_volume(int n) {
  if (n < 1) throw DomainError("weights", "dimension must be positive");
  const double half = 0.5 * n;
  return std::pow(std::numbers::pi, half) / std::tgamma(half + 1);
}

GridWeight::GridWeight(int n, double half_width, std::size_t samples_per_axis, std::vector<double> values)
    : n_(n), L_(half_width), N_(samples_per_axis), values_(std::move(values)) {
  if (n_ < 1 || n_ > 3) throw DomainError("weights", "grid weights support n = 1, 2, 3");
  if (!(L_ > 0) || N_ < 1) throw DomainError("weights", "grid spacing must be positive");
  std::size_t total = 1;
  for (int d = 0; d < n_; ++d) total *= N_;
  if (values_.size() != total) throw DomainError("weights", "grid weight has the wrong number of values");
  for (double v : values_)
    if (!(v >= 0) || !std::isfinite(v)) throw DomainError("weights", "grid weight values must be finite and >= 0");
}

double GridWeight::cell_measure() const { return std::pow(spacing(), n_); }

GridWeight GridWeight::sample(int n, double half_width, std::size_t samples_per_axis,
                              const std::function<double(std::span<const double>)>& w) {
  if (n < 1 || n > 3) throw DomainError("weights", "grid weights support n = 1, 2, 3");
  const double h = 2 * half_width / static_cast<double>(samples_per_axis);
  std::size_t total = 1;
  for (int d = 0; d < n; ++d) total *= samples_per_axis;
  std::vector<double> values(total);
  std::vector<double> x(static_cast<std::size_t>(n));
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rest = flat;
    for (int d = n - 1; d >= 0; --d) {
      const std::size_t j = rest % samples_per_axis;
      rest /= samples_per_axis;
      x[static_cast<std::size_t>(d)] = -half_width + (static_cast<double>(j) + 0.5) * h;
    }
    values[flat] = w(x);
  }
  return GridWeight(n, half_width, samples_per_axis, std::move(values));
}

GridWeight GridWeight::sample_radial(int n, double half_width, std::size_t samples_per_axis,
                                     const std::function<double(double)>& profile) {
  return sample(n, half_width, samples_per_axis, [&](std::span<const double> x) {
    double r2 = 0;
    for (double c : x) r2 += c * c;
    return profile(std::sqrt(r2));
  });
}

double GridWeight::at(std::span<const double> x) const {
  const double h = spacing();
  std::size_t flat = 0;
  for (int d = 0; d < n_; ++d) {
    const double u = (x[static_cast<std::size_t>(d)] + L_) / h;
    if (u < 0 || u >= static_cast<double>(N_)) return 0;
    flat = flat * N_ + static_cast<std::size_t>(u);
  }
  return values_[flat];
}

RearrangementProfile rearrange_radial_monotone(const RadialWeight& w, LogGrid grid) {
  if (w.monotonicity != Monotonicity::non_increasing)
    throw DomainError("weights", "closed-form rearrangement needs a radially non-increasing profile");
  // Spot-check the declared monotonicity over the radii the table will visit.
  const double vn = unit_ball_volume(w.n);
  const auto radius = [&](double t) { return std::pow(t / vn, 1.0 / w.n); };
  double prev = std::numeric_limits<double>::infinity();
  for (double t : LogGrid{grid.lo, grid.hi, 400}.nodes()) {
    const double v = w.profile(radius(t));
    if (!(v >= 0)) throw DomainError("weights", "weight profile must be nonnegative");
    if (v > prev * (1 + 1e-12)) throw DomainError("weights", "profile is not non-increasing");
    prev = v;
  }
  auto f0 = w.profile;
  const int n = w.n;
  return RearrangementProfile::from_closed_form(
      [f0, vn, n](double t) { return f0(std::pow(t / vn, 1.0 / n)); }, grid);
}

RearrangementProfile rearrange_power(int n, double alpha1, double alpha2, LogGrid grid) {
  if (alpha1 < 0 || alpha2 < 0)
    throw DomainError("weights", "|x|^(-alpha1,-alpha2) is non-increasing only for alpha_j >= 0");
  return RearrangementProfile::from_power(
      PowerForm{1.0, unit_ball_volume(n), -alpha1 / n, -alpha2 / n}, grid);
}

std::vector<double> sorted_cell_values(const GridWeight& w) {
  std::vector<double> v(w.values().begin(), w.values().end());
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

RearrangementProfile rearrange_grid(const GridWeight& w) {
  const std::vector<double> v = sorted_cell_values(w);
  const double cell = w.cell_measure();
  const double top = v.empty() ? 0.0 : v.front();
  const auto tied = [&](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(top, 1e-300); };
  // Symmetric ties on a lattice sphere stay far below this; longer runs are plateaus.
  constexpr std::size_t kMaxTieRun = 64;

  std::vector<double> knots_t;
  std::vector<double> knots_v;
  const auto push = [&](double t, double value) {
    if (!knots_t.empty() && t <= knots_t.back()) return;
    knots_t.push_back(t);
    knots_v.push_back(value);
  };
  std::size_t a = 0;
  while (a < v.size()) {
    std::size_t b = a + 1;
    while (b < v.size() && tied(v[b], v[a])) ++b;
    const double value = v[a];
    if (b - a <= kMaxTieRun) {
      push(0.5 * static_cast<double>(a + b) * cell, value);
    } else {
      push((static_cast<double>(a) + 0.5) * cell, value);
      push((static_cast<double>(b) - 0.5) * cell, value);
    }
    a = b;
  }
  if (knots_t.size() == 1) {
    // Constant grid: one plateau.
    knots_t.push_back(static_cast<double>(v.size()) * cell);
    knots_v.push_back(knots_v.front());
  }
  return RearrangementProfile::from_table(std::move(knots_t), std::move(knots_v),
                                          RearrangementProfile::Extrapolation::clamp);
}

// ---------------------------------------------------------------------------

Weight Weight::constant(double c) {
  if (!(c >= 0)) throw DomainError("weights", "weight must be nonnegative");
  Weight w;
  w.kind_ = Kind::constant;
  w.c_ = c;
  w.mono_ = Monotonicity::none;
  std::ostringstream os;
  os << "constant(" << c << ")";
  w.label_ = os.str();
  return w;
}

Weight Weight::power(double e1, double e2) {
  Weight w;
  w.kind_ = Kind::power;
  w.e1_ = e1;
  w.e2_ = e2;
  w.c_ = 1;
  std::ostringstream os;
  os << "|x|^(" << e1 << "," << e2 << ")";
  w.label_ = os.str();
  return w;
}

Weight Weight::radial(std::function<double(double)> profile, Monotonicity m, std::string label) {
  Weight w;
  w.kind_ = Kind::radial;
  w.radial_ = std::move(profile);
  w.mono_ = m;
  w.label_ = std::move(label);
  return w;
}

Weight Weight::general(std::function<double(std::span<const double>)> f, std::string label) {
  Weight w;
  w.kind_ = Kind::general;
  w.general_ = std::move(f);
  w.label_ = std::move(label);
  return w;
}

Weight Weight::grid(GridWeight g) {
  Weight w;
  w.kind_ = Kind::grid;
  w.grid_ = std::make_shared<const GridWeight>(std::move(g));
  w.label_ = "grid";
  return w;
}

double Weight::at_radius(double r) const {
  switch (kind_) {
    case Kind::constant: return c_;
    case Kind::power: return c_ * eval_piecewise_power(r, e1_, e2_);
    case Kind::radial: return radial_(r);
    default: throw DomainError("weights", "weight is not radial");
  }
}

double Weight::operator()(std::span<const double> x) const {
  switch (kind_) {
    case Kind::constant: return c_;
    case Kind::general: return general_(x);
    case Kind::grid: return grid_->at(x);
    default: break;
  }
  double r2 = 0;
  for (double c : x) r2 += c * c;
  const double r = std::sqrt(r2);
  if (kind_ == Kind::power) {
    if (r == 0) {
      const double e = e1_;
      return e < 0 ? std::numeric_limits<double>::infinity() : (e == 0 ? c_ : 0.0);
    }
    return c_ * eval_piecewise_power(r, e1_, e2_);
  }
  return radial_(r);
}

Weight Weight::scaled(double c) const {
  if (!(c >= 0)) throw DomainError("weights", "scale must be nonnegative");
  Weight w = *this;
  switch (kind_) {
    case Kind::constant:
    case Kind::power: w.c_ = c * c_; break;
    case Kind::radial: {
      auto f = radial_;
      w.radial_ = [f, c](double r) { return c * f(r); };
      break;
    }
    case Kind::general: {
      auto f = general_;
      w.general_ = [f, c](std::span<const double> x) { return c * f(x); };
      break;
    }
    case Kind::grid: {
      std::vector<double> vals(grid_->values().begin(), grid_->values().end());
      for (double& v : vals) v *= c;
      w.grid_ = std::make_shared<const GridWeight>(grid_->dimension(), grid_->half_width(),
                                                   grid_->samples_per_axis(), std::move(vals));
      break;
    }
  }
  return w;
}

std::optional<RearrangementProfile> Weight::rearrangement(int n, LogGrid grid) const {
  switch (kind_) {
    case Kind::constant: return RearrangementProfile::constant(c_, grid);
    case Kind::power:
      if (e1_ > 0 || e2_ > 0) return std::nullopt;
      return rearrange_power(n, -e1_, -e2_, grid).scaled(c_);
    case Kind::radial:
      if (mono_ != Monotonicity::non_increasing) return std::nullopt;
      return rearrange_radial_monotone(RadialWeight{radial_, mono_, n}, grid);
    case Kind::grid: return rearrange_grid(*grid_);
    case Kind::general: return std::nullopt;
  }
  return std::nullopt;
}

std::optional<RearrangementProfile> Weight::reciprocal_rearrangement(int n, LogGrid grid) const {
  switch (kind_) {
    case Kind::constant:
      if (std::isinf(c_)) return RearrangementProfile::zero(grid);
      if (c_ == 0) return std::nullopt;
      return RearrangementProfile::constant(1 / c_, grid);
    case Kind::power:
      if (e1_ < 0 || e2_ < 0 || c_ == 0) return std::nullopt;
      return rearrange_power(n, e1_, e2_, grid).scaled(1 / c_);
    case Kind::radial: {
      if (mono_ != Monotonicity::non_decreasing) return std::nullopt;
      auto f = radial_;
      return rearrange_radial_monotone(
          RadialWeight{[f](double r) { return 1 / f(r); }, Monotonicity::non_increasing, n}, grid);
    }
    default: return std::nullopt;
  }
}

}  // namespace carleman
