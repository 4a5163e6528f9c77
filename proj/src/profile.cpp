#include "carleman/profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "carleman/error.hpp"

namespace carleman {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Integral of fa * (t/a)^e over [a, b].
double power_segment(double fa, double a, double b, double e) {
  const double log_ratio = std::log(b / a);
  const double k = e + 1;
  if (std::abs(k * log_ratio) < 1e-12) return fa * a * log_ratio;
  return fa * a * std::expm1(k * log_ratio) / k;
}

double log_linear_segment(double fa, double fb, double a, double b) {
  if (fa == fb) return fa * (b - a);
  if (fa > 0 && fb > 0 && std::isfinite(fa) && std::isfinite(fb)) {
    const double e = std::log(fb / fa) / std::log(b / a);
    return power_segment(fa, a, b, e);
  }
  return 0.5 * (fa + fb) * (b - a);
}

// Local log-log slope between t[i] and t[j].
double slope_between(std::span<const double> t, std::span<const double> v, std::size_t i,
                     std::size_t j) {
  if (!(v[i] > 0) || !(v[j] > 0) || !std::isfinite(v[i]) || !std::isfinite(v[j])) return 0;
  return std::log(v[j] / v[i]) / std::log(t[j] / t[i]);
}

}  // namespace

std::vector<double> LogGrid::nodes() const {
  if (!(lo > 0) || !(hi > lo) || points < 2) throw DomainError("profile", "invalid log grid");
  std::vector<double> t(points);
  const double a = std::log(lo);
  const double step = (std::log(hi) - a) / static_cast<double>(points - 1);
  for (std::size_t k = 0; k < points; ++k) t[k] = std::exp(a + step * static_cast<double>(k));
  t.front() = lo;
  t.back() = hi;
  return t;
}

double PowerForm::value(double t) const {
  if (coef == 0) return 0;
  const double y = t / knot;
  return coef * std::pow(y, y <= 1 ? e1 : e2);
}

double PowerForm::integral(double s) const {
  if (coef == 0 || s <= 0) return 0;
  if (e1 <= -1) return kInf;
  const double below = coef * knot / (e1 + 1);
  if (s <= knot) return below * std::pow(s / knot, e1 + 1);
  return below + coef * power_segment(1.0, knot, s, e2);
}

RearrangementProfile RearrangementProfile::from_closed_form(std::function<double(double)> f,
                                                            LogGrid grid) {
  RearrangementProfile prof;
  prof.t_ = grid.nodes();
  prof.v_.resize(prof.t_.size());
  for (std::size_t k = 0; k < prof.t_.size(); ++k) prof.v_[k] = f(prof.t_[k]);
  prof.closed_ = std::move(f);
  prof.extrapolation_ = Extrapolation::power_law;
  prof.build_cumulative();
  return prof;
}

RearrangementProfile RearrangementProfile::from_power(PowerForm form, LogGrid grid) {
  RearrangementProfile prof = from_closed_form([form](double t) { return form.value(t); }, grid);
  prof.power_ = form;
  prof.build_cumulative();
  return prof;
}

RearrangementProfile RearrangementProfile::from_table(std::vector<double> t,
                                                      std::vector<double> values,
                                                      Extrapolation extrapolation) {
  if (t.size() != values.size() || t.size() < 2)
    throw DomainError("profile", "table needs at least two (t, value) pairs of equal length");
  for (std::size_t k = 1; k < t.size(); ++k)
    if (!(t[k] > t[k - 1])) throw DomainError("profile", "abscissae must be strictly increasing");
  if (!(t.front() > 0)) throw DomainError("profile", "abscissae must be positive");
  RearrangementProfile prof;
  prof.t_ = std::move(t);
  prof.v_ = std::move(values);
  prof.extrapolation_ = extrapolation;
  prof.build_cumulative();
  return prof;
}

RearrangementProfile RearrangementProfile::zero(LogGrid grid) {
  return from_power(PowerForm{0, 1, 0, 0}, grid);
}

RearrangementProfile RearrangementProfile::constant(double c, LogGrid grid) {
  return from_power(PowerForm{c, 1, 0, 0}, grid);
}

void RearrangementProfile::build_cumulative() {
  const std::size_t m = t_.size();
  cum_.assign(m, 0.0);
  const std::size_t decade_hi = static_cast<std::size_t>(
      std::lower_bound(t_.begin(), t_.end(), 10 * t_.front()) - t_.begin());
  const std::size_t head_j = std::min(std::max<std::size_t>(decade_hi, 1), m - 1);
  const std::size_t decade_lo = static_cast<std::size_t>(
      std::upper_bound(t_.begin(), t_.end(), t_.back() / 10) - t_.begin());
  const std::size_t tail_i = std::min(decade_lo, m - 2);

  if (extrapolation_ == Extrapolation::clamp) {
    head_slope_ = 0;
    tail_slope_ = 0;
  } else {
    head_slope_ = slope_between(t_, v_, 0, head_j);
    tail_slope_ = slope_between(t_, v_, tail_i, m - 1);
  }

  if (power_) {
    head_ = power_->integral(t_.front());
    for (std::size_t k = 0; k < m; ++k) cum_[k] = power_->integral(t_[k]);
    return;
  }

  if (v_.front() == 0) {
    head_ = 0;
  } else if (!std::isfinite(v_.front())) {
    head_ = kInf;
  } else if (extrapolation_ == Extrapolation::clamp) {
    head_ = v_.front() * t_.front();
  } else {
    head_ = head_slope_ <= -1 + 1e-9 ? kInf : v_.front() * t_.front() / (1 + head_slope_);
  }
  cum_[0] = head_;
  for (std::size_t k = 0; k + 1 < m; ++k)
    cum_[k + 1] = cum_[k] + segment_integral(k, t_[k], t_[k + 1]);
}

double RearrangementProfile::segment_integral(std::size_t k, double a, double b) const {
  const double fa = a == t_[k] ? v_[k] : (*this)(a);
  const double fb = (k + 1 < t_.size() && b == t_[k + 1]) ? v_[k + 1] : (*this)(b);
  if (extrapolation_ == Extrapolation::clamp) return 0.5 * (fa + fb) * (b - a);
  return log_linear_segment(fa, fb, a, b);
}

double RearrangementProfile::table_value(double t) const {
  if (t <= t_.front()) {
    if (extrapolation_ == Extrapolation::clamp || t == t_.front()) return v_.front();
    return v_.front() * std::pow(t / t_.front(), head_slope_);
  }
  if (t >= t_.back()) {
    if (t == t_.back()) return v_.back();
    if (extrapolation_ == Extrapolation::clamp) return 0;
    return v_.back() * std::pow(t / t_.back(), tail_slope_);
  }
  const std::size_t j = static_cast<std::size_t>(std::upper_bound(t_.begin(), t_.end(), t) - t_.begin());
  const std::size_t i = j - 1;
  const double fa = v_[i], fb = v_[j];
  if (extrapolation_ == Extrapolation::power_law && fa > 0 && fb > 0 && std::isfinite(fa) &&
      std::isfinite(fb)) {
    const double w = std::log(t / t_[i]) / std::log(t_[j] / t_[i]);
    return fa * std::pow(fb / fa, w);
  }
  const double w = (t - t_[i]) / (t_[j] - t_[i]);
  return fa + w * (fb - fa);
}

double RearrangementProfile::operator()(double t) const {
  if (closed_) return closed_(t);
  return table_value(t);
}

double RearrangementProfile::integral(double s) const {
  if (s <= 0) return 0;
  if (power_) return power_->integral(s);
  if (s <= t_.front()) {
    if (extrapolation_ == Extrapolation::clamp) return v_.front() * s;
    if (head_ == 0 || !std::isfinite(head_)) return head_;
    return head_ * std::pow(s / t_.front(), 1 + head_slope_);
  }
  if (s >= t_.back()) {
    if (extrapolation_ == Extrapolation::clamp || s == t_.back()) return cum_.back();
    return cum_.back() + power_segment(v_.back(), t_.back(), s, tail_slope_);
  }
  const std::size_t j = static_cast<std::size_t>(std::upper_bound(t_.begin(), t_.end(), s) - t_.begin());
  const std::size_t i = j - 1;
  return cum_[i] + segment_integral(i, t_[i], s);
}

RearrangementProfile RearrangementProfile::pow(double e) const {
  if (!(e > 0)) throw DomainError("profile", "power of a profile needs a positive exponent");
  RearrangementProfile out;
  out.t_ = t_;
  out.extrapolation_ = extrapolation_;
  out.v_.resize(v_.size());
  for (std::size_t k = 0; k < v_.size(); ++k) out.v_[k] = std::pow(v_[k], e);
  if (closed_) {
    auto f = closed_;
    out.closed_ = [f, e](double t) { return std::pow(f(t), e); };
  }
  if (power_) out.power_ = PowerForm{std::pow(power_->coef, e), power_->knot, power_->e1 * e, power_->e2 * e};
  out.build_cumulative();
  return out;
}

RearrangementProfile RearrangementProfile::scaled(double c) const {
  if (!(c >= 0)) throw DomainError("profile", "scale factor must be nonnegative");
  RearrangementProfile out;
  out.t_ = t_;
  out.extrapolation_ = extrapolation_;
  out.v_.resize(v_.size());
  for (std::size_t k = 0; k < v_.size(); ++k) out.v_[k] = c * v_[k];
  if (closed_) {
    auto f = closed_;
    out.closed_ = [f, c](double t) { return c * f(t); };
  }
  if (power_) out.power_ = PowerForm{c * power_->coef, power_->knot, power_->e1, power_->e2};
  out.build_cumulative();
  return out;
}

bool RearrangementProfile::is_zero() const {
  return std::all_of(v_.begin(), v_.end(), [](double x) { return x == 0; });
}

bool RearrangementProfile::is_non_increasing(double rel_tol) const {
  for (std::size_t k = 1; k < v_.size(); ++k) {
    if (!(v_[k] >= 0)) return false;
    if (v_[k] > v_[k - 1] * (1 + rel_tol) + 0.0) return false;
  }
  return v_.empty() || v_.front() >= 0;
}

}  // namespace carleman
