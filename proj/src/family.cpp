#include "carleman/family.hpp"

#include <array>
#include <cmath>
#include <random>
#include <sstream>

#include "carleman/error.hpp"

namespace carleman {

namespace {

// Uniform [lo, hi) from the top 53 bits; identical on every platform.
double uniform(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

// Exponent tuples of all monomials of total degree <= deg in n variables, in a fixed order.
std::vector<std::array<int, 3>> monomials(int n, int deg) {
  std::vector<std::array<int, 3>> out;
  for (int total = 0; total <= deg; ++total) {
    // Enumerate compositions of `total` into n parts, lexicographically.
    std::array<int, 3> cur{0, 0, 0};
    const auto rec = [&](auto&& self, int axis, int left) -> void {
      if (axis == n - 1) {
        cur[static_cast<std::size_t>(axis)] = left;
        out.push_back(cur);
        return;
      }
      for (int k = left; k >= 0; --k) {
        cur[static_cast<std::size_t>(axis)] = k;
        self(self, axis + 1, left - k);
      }
    };
    rec(rec, 0, total);
  }
  return out;
}

double norm(std::span<const double> x) {
  double r2 = 0;
  for (double c : x) r2 += c * c;
  return std::sqrt(r2);
}

}  // namespace

std::string_view to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::ball_bump: return "ball-bump";
    case FamilyKind::gaussian_poly: return "gaussian-times-polynomial";
    case FamilyKind::translated_bump: return "translated-bump";
    case FamilyKind::dilated_bump: return "dilated-bump";
  }
  return "ball-bump";
}

FamilyKind parse_family_kind(std::string_view s) {
  if (s == "ball-bump") return FamilyKind::ball_bump;
  if (s == "gaussian-times-polynomial") return FamilyKind::gaussian_poly;
  if (s == "translated-bump") return FamilyKind::translated_bump;
  if (s == "dilated-bump") return FamilyKind::dilated_bump;
  throw DomainError("harness", "unknown family kind '" + std::string(s) + "'");
}

double standard_bump(double r) {
  if (!(r < 1) || r < 0) return r < 0 ? standard_bump(-r) : 0.0;
  return std::exp(-1 / (1 - r * r));
}

double FamilyMember::operator()(std::span<const double> x) const {
  double y[3];
  for (int d = 0; d < n; ++d) y[d] = x[static_cast<std::size_t>(d)] - center[static_cast<std::size_t>(d)];
  const std::span<const double> ys(y, static_cast<std::size_t>(n));
  switch (kind) {
    case FamilyKind::ball_bump:
    case FamilyKind::translated_bump: return standard_bump(norm(ys) / scales[0]);
    case FamilyKind::dilated_bump: {
      const double r = scales[0] * norm(ys);
      if (r >= 1) return 0;
      return standard_bump(r) * std::pow(scales[1] * scales[1] + r * r, -0.5 * scales[2]);
    }
    case FamilyKind::gaussian_poly: {
      const double s = scales[0];
      double r2 = 0;
      for (int d = 0; d < n; ++d) {
        y[d] /= s;
        r2 += y[d] * y[d];
      }
      double p = 0;
      for (std::size_t k = 0; k < terms.size(); ++k) {
        double t = poly[k];
        for (int d = 0; d < n; ++d) t *= std::pow(y[d], terms[k][static_cast<std::size_t>(d)]);
        p += t;
      }
      return p * std::exp(-0.5 * r2);
    }
  }
  return 0;
}

double FamilyMember::reach() const {
  const double c = norm(center);
  switch (kind) {
    case FamilyKind::ball_bump:
    case FamilyKind::translated_bump: return c + scales[0];
    case FamilyKind::dilated_bump: return c + 1 / scales[0];
    case FamilyKind::gaussian_poly: return c + 10 * scales[0];
  }
  return c;
}

std::vector<std::string> FamilyMember::scale_names() const {
  switch (kind) {
    case FamilyKind::ball_bump:
    case FamilyKind::translated_bump: return {"radius"};
    case FamilyKind::dilated_bump: return {"lambda", "core", "kappa"};
    case FamilyKind::gaussian_poly: return {"width"};
  }
  return {};
}

std::string FamilyMember::label() const {
  std::ostringstream os;
  os.precision(6);
  os << to_string(kind) << "(";
  const auto names = scale_names();
  for (std::size_t k = 0; k < scales.size(); ++k) os << (k ? ", " : "") << names[k] << "=" << scales[k];
  if (kind == FamilyKind::gaussian_poly) os << ", degree=" << degree;
  os << ")";
  return os.str();
}

std::vector<FamilyMember> make_family(const FamilySpec& spec, int n, double L) {
  if (n < 1 || n > 3) throw DomainError("harness", "families support n = 1, 2, 3");
  if (spec.count < 1) throw DomainError("harness", "family needs at least one member");
  if (spec.max_degree < 0 || spec.max_degree > 4) throw DomainError("harness", "polynomial degree must be 0..4");
  std::mt19937_64 rng(spec.seed);
  std::vector<FamilyMember> out;
  for (int k = 0; k < spec.count; ++k) {
    FamilyMember m;
    m.kind = spec.kind;
    m.n = n;
    m.center.assign(static_cast<std::size_t>(n), 0.0);
    switch (spec.kind) {
      case FamilyKind::ball_bump: m.scales = {uniform(rng, 0.15 * L, 0.35 * L)}; break;
      case FamilyKind::translated_bump:
        for (double& c : m.center) c = uniform(rng, -0.2 * L, 0.2 * L);
        m.scales = {uniform(rng, 0.15 * L, 0.3 * L)};
        break;
      case FamilyKind::dilated_bump:
        m.scales = {1 / uniform(rng, 0.1 * L, 0.5 * L), uniform(rng, 0.05, 0.5), uniform(rng, 0.1, 0.5)};
        break;
      case FamilyKind::gaussian_poly: {
        for (double& c : m.center) c = uniform(rng, -0.1 * L, 0.1 * L);
        m.scales = {uniform(rng, 0.05 * L, 0.08 * L)};
        m.degree = uniform_int(rng, 0, spec.max_degree);
        m.terms = monomials(n, m.degree);
        m.poly.resize(m.terms.size());
        m.poly[0] = 1;
        for (std::size_t t = 1; t < m.poly.size(); ++t) m.poly[t] = uniform(rng, -1, 1);
        break;
      }
    }
    out.push_back(std::move(m));
  }
  return out;
}

GridFunction sample_member(const FamilyMember& m, double half_width, std::size_t N) {
  Sampled s = sample([&m](std::span<const double> x) { return cplx(m(x), 0.0); }, m.n, half_width, N);
  if (s.warning) throw BoundaryError("harness", m.label() + ": " + s.message);
  return std::move(s.f);
}

}  // namespace carleman
