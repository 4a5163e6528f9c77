#include "carleman/cubature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "carleman/error.hpp"

namespace carleman {

namespace {

using Fn = std::function<double(std::span<const double>)>;

struct Rule {
  const double* x;  // nodes on [-1, 1]
  const double* w;
  int m;
};

constexpr double kGl8x[8] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
                             0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
constexpr double kGl8w[8] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
                             0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};
constexpr double kGl4x[4] = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563, 0.8611363115940526};
constexpr double kGl4w[4] = {0.3478548451374538, 0.6521451548625461, 0.6521451548625461, 0.3478548451374538};

constexpr Rule kGl8{kGl8x, kGl8w, 8};
constexpr Rule kGl4{kGl4x, kGl4w, 4};

struct Box {
  std::array<double, 3> lo{0, 0, 0};
  std::array<double, 3> hi{0, 0, 0};
};

double product_rule(const Fn& F, const Box& b, int n, const Rule& rule, const Region* indicator) {
  double x[3] = {0, 0, 0};
  double half[3], mid[3];
  for (int d = 0; d < n; ++d) {
    half[d] = 0.5 * (b.hi[d] - b.lo[d]);
    mid[d] = 0.5 * (b.hi[d] + b.lo[d]);
  }
  const int m = rule.m;
  int total = 1;
  for (int d = 0; d < n; ++d) total *= m;
  double sum = 0;
  for (int k = 0; k < total; ++k) {
    int rest = k;
    double w = 1;
    for (int d = n - 1; d >= 0; --d) {
      const int j = rest % m;
      rest /= m;
      x[d] = mid[d] + half[d] * rule.x[j];
      w *= rule.w[j];
    }
    const std::span<const double> xs(x, static_cast<std::size_t>(n));
    if (indicator && !indicator->contains(xs)) continue;
    const double f = F(xs);
    if (f != 0) sum += w * f;
  }
  double vol = 1;
  for (int d = 0; d < n; ++d) vol *= half[d];
  return sum * vol;
}

bool empty(const Box& b, int n) {
  for (int d = 0; d < n; ++d)
    if (!(b.hi[d] > b.lo[d])) return true;
  return false;
}

Box child(const Box& b, int n, int mask) {
  Box c;
  for (int d = 0; d < n; ++d) {
    const double mid = 0.5 * (b.lo[d] + b.hi[d]);
    if (mask & (1 << d)) {
      c.lo[d] = mid;
      c.hi[d] = b.hi[d];
    } else {
      c.lo[d] = b.lo[d];
      c.hi[d] = mid;
    }
  }
  return c;
}

int max_cut_depth(int n) { return n == 1 ? 30 : (n == 2 ? 10 : 5); }

// Box away from the origin; handles the ball boundary by subdivision.
double regular(const Fn& F, const Box& b, const Region& region, int depth, const Rule& rule) {
  const int n = region.n;
  if (region.ball_radius > 0) {
    double dmin2 = 0, dmax2 = 0;
    for (int d = 0; d < n; ++d) {
      const double lo = b.lo[d], hi = b.hi[d];
      const double near = (lo > 0) ? lo : (hi < 0 ? -hi : 0.0);
      const double far = std::max(std::abs(lo), std::abs(hi));
      dmin2 += near * near;
      dmax2 += far * far;
    }
    const double R2 = region.ball_radius * region.ball_radius;
    if (dmin2 >= R2) return 0;
    if (dmax2 > R2) {
      if (depth >= max_cut_depth(n)) return product_rule(F, b, n, kGl4, &region);
      double sum = 0;
      for (int mask = 0; mask < (1 << n); ++mask) sum += regular(F, child(b, n, mask), region, depth + 1, kGl4);
      return sum;
    }
  }
  return product_rule(F, b, n, rule, nullptr);
}

// Shell pieces next to the corner box get one extra split: they sit at
// relative distance one from the singularity.
double near_singular(const Fn& F, const Box& b, const Region& region) {
  double sum = 0;
  for (int mask = 0; mask < (1 << region.n); ++mask) sum += regular(F, child(b, region.n, mask), region, 1, kGl8);
  return sum;
}

// Box with the origin at one of its corners.
CubatureResult corner_ladder(const Fn& F, Box b, const Region& region) {
  const int n = region.n;
  // Index of the child that keeps the origin corner.
  int corner = 0;
  for (int d = 0; d < n; ++d)
    if (b.hi[d] == 0) corner |= 1 << d;

  constexpr int kMaxLevels = 200;
  double total = 0, prev = 0, prev_rho = -1;
  for (int level = 0; level < kMaxLevels; ++level) {
    double c = 0;
    for (int mask = 0; mask < (1 << n); ++mask)
      if (mask != corner) c += near_singular(F, child(b, n, mask), region);
    if (!std::isfinite(c)) return {std::numeric_limits<double>::infinity(), true};
    total += c;
    b = child(b, n, corner);
    if (level >= 6 && c == 0 && prev == 0) return {total, false};
    if (prev > 0 && c > 0) {
      const double rho = c / prev;
      if (level >= 8 && std::abs(rho - prev_rho) <= 1e-6 * rho) {
        if (rho >= 1 - 1e-9) return {std::numeric_limits<double>::infinity(), true};
        return {total + c * rho / (1 - rho), false};
      }
      prev_rho = rho;
    }
    prev = c;
  }
  if (prev_rho >= 1 - 1e-9) return {std::numeric_limits<double>::infinity(), true};
  return {total + prev * prev_rho / (1 - prev_rho), false};
}

}  // namespace

Region Region::box(int n, std::span<const double> lo, std::span<const double> hi) {
  if (n < 1 || n > 3) throw DomainError("cubature", "regions support n = 1, 2, 3");
  if (lo.size() != static_cast<std::size_t>(n) || hi.size() != static_cast<std::size_t>(n))
    throw DomainError("cubature", "box corners must have n components");
  Region r;
  r.n = n;
  for (int d = 0; d < n; ++d) {
    r.lo[d] = lo[static_cast<std::size_t>(d)];
    r.hi[d] = hi[static_cast<std::size_t>(d)];
    if (!(r.hi[d] > r.lo[d])) throw DomainError("cubature", "box must have positive extent");
  }
  return r;
}

Region Region::ball(int n, double radius) {
  if (n < 1 || n > 3) throw DomainError("cubature", "regions support n = 1, 2, 3");
  if (!(radius > 0)) throw DomainError("cubature", "ball radius must be positive");
  Region r;
  r.n = n;
  r.ball_radius = radius;
  for (int d = 0; d < n; ++d) {
    r.lo[d] = -radius;
    r.hi[d] = radius;
  }
  return r;
}

bool Region::contains(std::span<const double> x) const {
  double r2 = 0;
  for (int d = 0; d < n; ++d) {
    const double c = x[static_cast<std::size_t>(d)];
    if (c < lo[d] || c > hi[d]) return false;
    r2 += c * c;
  }
  return ball_radius <= 0 || r2 < ball_radius * ball_radius;
}

CubatureResult integrate(const Fn& F, const Region& region) {
  const int n = region.n;
  bool touches = true;
  for (int d = 0; d < n; ++d) touches = touches && region.lo[d] <= 0 && 0 <= region.hi[d];
  Box whole;
  whole.lo = region.lo;
  whole.hi = region.hi;
  if (!touches) return {regular(F, whole, region, 0, kGl8), false};

  CubatureResult out;
  // Split at the origin into up to 2^n pieces, each with the origin at a corner.
  for (int mask = 0; mask < (1 << n); ++mask) {
    Box piece;
    for (int d = 0; d < n; ++d) {
      if (mask & (1 << d)) {
        piece.lo[d] = 0;
        piece.hi[d] = region.hi[d];
      } else {
        piece.lo[d] = region.lo[d];
        piece.hi[d] = 0;
      }
    }
    if (empty(piece, n)) continue;
    const CubatureResult r = corner_ladder(F, piece, region);
    out.value += r.value;
    out.divergent = out.divergent || r.divergent;
  }
  if (out.divergent) out.value = std::numeric_limits<double>::infinity();
  return out;
}

}  // namespace carleman
