#include "carleman/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "carleman/error.hpp"

namespace carleman {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t index_at_or_after(const std::vector<double>& s, double target) {
  return static_cast<std::size_t>(std::lower_bound(s.begin(), s.end(), target) - s.begin());
}

std::size_t index_at_or_before(const std::vector<double>& s, double target) {
  const auto it = std::upper_bound(s.begin(), s.end(), target);
  return it == s.begin() ? 0 : static_cast<std::size_t>(it - s.begin()) - 1;
}

// Rate of growth of f towards the endpoint `end`, measured from `inner`, per unit |log s|.
double growth_rate(const std::vector<double>& s, const std::vector<double>& f, std::size_t end,
                   std::size_t inner) {
  if (f[inner] <= 0) return f[end] > 0 ? kInf : 0.0;
  if (f[end] <= 0) return -kInf;
  return std::log(f[end] / f[inner]) / std::abs(std::log(s[end] / s[inner]));
}

}  // namespace

std::string_view to_string(Divergence d) {
  switch (d) {
    case Divergence::none: return "none";
    case Divergence::at_zero: return "s->0";
    case Divergence::at_infinity: return "s->inf";
    case Divergence::both: return "both";
  }
  return "none";
}

Divergence merge(Divergence a, Divergence b) {
  if (a == Divergence::none) return b;
  if (b == Divergence::none || a == b) return a;
  return Divergence::both;
}

SupResult sup_over_scan(const std::function<double(double)>& F, const LogGrid& grid) {
  const std::vector<double> s = grid.nodes();
  const std::size_t m = s.size();
  std::vector<double> f(m);
  for (std::size_t k = 0; k < m; ++k) {
    f[k] = F(s[k]);
    if (std::isnan(f[k])) throw DomainError("conditions", "supremand evaluated to NaN");
  }

  SupResult out;
  for (std::size_t k = 0; k < m; ++k) {
    if (std::isinf(f[k])) {
      out.value = kInf;
      out.argmax = s[k];
      out.divergence = merge(out.divergence, k < m / 2 ? Divergence::at_zero : Divergence::at_infinity);
    }
  }
  if (out.divergence != Divergence::none) return out;

  double interior = 0;
  for (std::size_t k = m / 4; k <= 3 * m / 4; ++k) interior = std::max(interior, f[k]);

  const auto diverges = [&](std::size_t end, std::size_t inner) {
    if (!(f[end] > f[inner] * (1 + 1e-12))) return false;  // not increasing towards the end
    if (!(f[end] > interior)) return false;
    const bool tenfold = interior > 0 && f[end] > 10 * interior;
    return tenfold || growth_rate(s, f, end, inner) >= kGrowthSlope;
  };
  const std::size_t left_inner = std::min(index_at_or_after(s, 10 * s.front()), m - 1);
  const std::size_t right_inner = index_at_or_before(s, s.back() / 10);
  if (diverges(0, left_inner)) out.divergence = merge(out.divergence, Divergence::at_zero);
  if (diverges(m - 1, right_inner)) out.divergence = merge(out.divergence, Divergence::at_infinity);
  if (out.divergence != Divergence::none) {
    out.value = kInf;
    out.argmax = out.divergence == Divergence::at_infinity ? s.back() : s.front();
    return out;
  }

  const std::size_t best =
      static_cast<std::size_t>(std::max_element(f.begin(), f.end()) - f.begin());
  out.value = f[best];
  out.argmax = s[best];
  if (best == 0 || best + 1 == m || f[best] == 0) return out;

  // Golden-section refinement in log s.
  const double invphi = (std::sqrt(5.0) - 1) / 2;
  double a = std::log(s[best - 1]);
  double b = std::log(s[best + 1]);
  const auto G = [&](double x) { return F(std::exp(x)); };
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = G(c), fd = G(d);
  for (int it = 0; it < 80 && (b - a) > 1e-13; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = G(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = G(d);
    }
  }
  const double x = fc >= fd ? c : d;
  const double fx = std::max(fc, fd);
  if (fx > out.value) {
    out.value = fx;
    out.argmax = std::exp(x);
  }
  return out;
}

IntegralResult integrate_over_log_scale(const std::function<double(double)>& h, const LogGrid& grid) {
  const std::vector<double> s = grid.nodes();
  const std::size_t m = s.size();
  std::vector<double> f(m);
  IntegralResult out;
  for (std::size_t k = 0; k < m; ++k) {
    f[k] = h(s[k]);
    if (std::isnan(f[k])) throw DomainError("conditions", "integrand evaluated to NaN");
    if (f[k] < 0) throw DomainError("conditions", "integrand must be nonnegative");
    if (std::isinf(f[k]))
      out.divergence = merge(out.divergence, k < m / 2 ? Divergence::at_zero : Divergence::at_infinity);
  }

  const std::size_t left_inner = std::min(index_at_or_after(s, 10 * s.front()), m - 1);
  const std::size_t right_inner = index_at_or_before(s, s.back() / 10);
  double left_tail = 0, right_tail = 0;
  if (f.front() > 0 && std::isfinite(f.front())) {
    // h ~ s^k as s -> 0 converges iff k > 0.
    const double k = -growth_rate(s, f, 0, left_inner);
    if (k > kTailDecay) left_tail = f.front() / k;
    else out.divergence = merge(out.divergence, Divergence::at_zero);
  }
  if (f.back() > 0 && std::isfinite(f.back())) {
    const double k = growth_rate(s, f, m - 1, right_inner);
    if (k < -kTailDecay) right_tail = f.back() / -k;
    else out.divergence = merge(out.divergence, Divergence::at_infinity);
  }
  if (out.divergence != Divergence::none) {
    out.value = kInf;
    return out;
  }

  double total = left_tail;
  for (std::size_t k = 0; k + 1 < m; ++k) {
    const double dx = std::log(s[k + 1] / s[k]);
    const double a = f[k], b = f[k + 1];
    if (a > 0 && b > 0 && a != b) {
      const double e = std::log(b / a) / dx;
      total += a * std::expm1(e * dx) / e;
    } else {
      total += 0.5 * (a + b) * dx;
    }
  }
  out.value = total + right_tail;
  return out;
}

}  // namespace carleman
