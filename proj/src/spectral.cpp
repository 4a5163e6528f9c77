#include "carleman/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

#include "carleman/error.hpp"
#include "carleman/kernels.hpp"

namespace carleman {

namespace {

constexpr double kPi = std::numbers::pi;

// FFTW plans keyed by (n, N, sign). Planning is not thread-safe; execution
// through fftw_execute_dft on other arrays is.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(int n, std::size_t N, int sign) {
    std::lock_guard lock(mutex_);
    const auto key = std::make_tuple(n, N, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    int dims[3];
    std::size_t total = 1;
    for (int d = 0; d < n; ++d) {
      dims[d] = static_cast<int>(N);
      total *= N;
    }
    // FFTW_ESTIMATE leaves the scratch array alone while planning.
    fftw_complex* scratch = fftw_alloc_complex(total);
    fftw_plan plan = fftw_plan_dft(n, dims, scratch, scratch, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(scratch);
    if (!plan) throw Error("spectral", "FFT planning failed");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<int, std::size_t, int>, fftw_plan> plans_;
};

PlanCache& plans() {
  static PlanCache cache;
  return cache;
}

void execute(std::vector<cplx>& data, int n, std::size_t N, int sign) {
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plans().get(n, N, sign), p, p);
}

// Tensor product of one per-axis factor table, as a flat array.
template <typename T>
std::vector<T> outer(const GridGeometry& g, const std::vector<T>& axis) {
  std::vector<T> out(g.size());
  std::size_t idx[3] = {0, 0, 0};
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    g.indices(flat, std::span<std::size_t>(idx, static_cast<std::size_t>(g.n)));
    T v = axis[idx[0]];
    for (int d = 1; d < g.n; ++d) v *= axis[idx[d]];
    out[flat] = v;
  }
  return out;
}

std::vector<cplx> phases(std::size_t N, double step, double scale, double base) {
  std::vector<cplx> out(N);
  for (std::size_t j = 0; j < N; ++j) out[j] = std::polar(scale, base + step * static_cast<double>(j));
  return out;
}

bool is_power_of_two(std::size_t N) { return N != 0 && (N & (N - 1)) == 0; }

}  // namespace

std::size_t GridGeometry::size() const {
  std::size_t total = 1;
  for (int d = 0; d < n; ++d) total *= N;
  return total;
}

double GridGeometry::cell_measure() const { return std::pow(spacing, n); }

void GridGeometry::indices(std::size_t flat, std::span<std::size_t> j) const {
  for (int d = n - 1; d >= 0; --d) {
    j[static_cast<std::size_t>(d)] = flat % N;
    flat /= N;
  }
}

void GridGeometry::coords(std::size_t flat, std::span<double> x) const {
  for (int d = n - 1; d >= 0; --d) {
    x[static_cast<std::size_t>(d)] = node(flat % N);
    flat /= N;
  }
}

GridGeometry GridGeometry::box(int n, double half_width, std::size_t N) {
  if (n < 1 || n > 3) throw DomainError("spectral", "grids support n = 1, 2, 3");
  if (!(half_width > 0) || N < 1) throw DomainError("spectral", "grid spacing must be positive");
  const double h = 2 * half_width / static_cast<double>(N);
  return GridGeometry{n, N, -half_width + 0.5 * h, h};
}

GridFunction::GridFunction(GridGeometry g, std::vector<cplx> values, Domain domain, double conjugate_origin)
    : g_(g), v_(std::move(values)), domain_(domain), conjugate_origin_(conjugate_origin) {
  if (v_.size() != g_.size()) throw DomainError("spectral", "value count does not match the grid");
  for (const cplx& z : v_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw DomainError("spectral", "grid function values must be finite");
}

double GridFunction::max_abs() const {
  double m = 0;
  for (const cplx& z : v_) m = std::max(m, std::abs(z));
  return m;
}

double GridFunction::boundary_magnitude() const {
  const double top = max_abs();
  if (top == 0) return 0;
  double m = 0;
  std::size_t idx[3] = {0, 0, 0};
  for (std::size_t flat = 0; flat < v_.size(); ++flat) {
    g_.indices(flat, std::span<std::size_t>(idx, static_cast<std::size_t>(g_.n)));
    bool edge = false;
    for (int d = 0; d < g_.n; ++d) edge = edge || idx[d] == 0 || idx[d] + 1 == g_.N;
    if (edge) m = std::max(m, std::abs(v_[flat]));
  }
  return m / top;
}

Sampled sample(const std::function<cplx(std::span<const double>)>& fn, int n, double half_width,
               std::size_t N) {
  if (!is_power_of_two(N) || N < 16) throw DomainError("spectral", "N must be a power of two, at least 16");
  const GridGeometry g = GridGeometry::box(n, half_width, N);
  std::vector<cplx> values(g.size());
  double x[3];
  for (std::size_t flat = 0; flat < values.size(); ++flat) {
    g.coords(flat, std::span<double>(x, static_cast<std::size_t>(n)));
    values[flat] = fn(std::span<const double>(x, static_cast<std::size_t>(n)));
  }
  Sampled out{GridFunction(g, std::move(values)), 0, false, {}};
  out.boundary = out.f.boundary_magnitude();
  if (out.boundary >= kBoundaryTol) {
    out.warning = true;
    out.message = "boundary magnitude " + std::to_string(out.boundary) + " exceeds " +
                  std::to_string(kBoundaryTol) + "; enlarge L";
  }
  return out;
}

Direction Direction::make(std::vector<double> a, double b) {
  if (a.empty() || a.size() > 3) throw DomainError("spectral", "direction must have 1 to 3 components");
  double norm2 = 0;
  for (double c : a) norm2 += c * c;
  if (!(std::abs(std::sqrt(norm2) - 1) <= 1e-12)) throw DomainError("spectral", "direction must be a unit vector");
  if (!std::isfinite(b)) throw DomainError("spectral", "offset must be finite");
  return Direction{std::move(a), b};
}

Direction Direction::axis(int n, int k) {
  std::vector<double> a(static_cast<std::size_t>(n), 0.0);
  a.at(static_cast<std::size_t>(k)) = 1;
  return Direction{std::move(a), 0};
}

GridFunction fourier(const GridFunction& f, DualLayout layout) {
  if (f.domain() != Domain::space) throw DomainError("spectral", "fourier expects a spatial grid function");
  const GridGeometry& g = f.geometry();
  const double a = g.origin;
  const double h = g.spacing;
  const double delta = 2 * kPi / (static_cast<double>(g.N) * h);
  double b = -kPi / h;
  if (layout == DualLayout::midpoint) b += 0.5 * delta;

  std::vector<cplx> data(f.values().begin(), f.values().end());
  kernels::mul_complex(data, outer(g, phases(g.N, -b * h, 1.0, 0.0)));
  execute(data, g.n, g.N, FFTW_FORWARD);
  kernels::mul_complex(data, outer(g, phases(g.N, -a * delta, h, -a * b)));
  return GridFunction(GridGeometry{g.n, g.N, b, delta}, std::move(data), Domain::frequency, a);
}

GridFunction inverse_fourier(const GridFunction& fhat) {
  if (fhat.domain() != Domain::frequency)
    throw DomainError("spectral", "inverse_fourier expects a frequency-domain grid function");
  const GridGeometry& g = fhat.geometry();
  const double b = g.origin;
  const double delta = g.spacing;
  const double h = 2 * kPi / (static_cast<double>(g.N) * delta);
  const double a = fhat.conjugate_origin();

  std::vector<cplx> data(fhat.values().begin(), fhat.values().end());
  kernels::mul_complex(data, outer(g, phases(g.N, a * delta, 1.0, 0.0)));
  execute(data, g.n, g.N, FFTW_BACKWARD);
  kernels::mul_complex(data, outer(g, phases(g.N, b * h, delta / (2 * kPi), a * b)));
  return GridFunction(GridGeometry{g.n, g.N, a, h}, std::move(data), Domain::space);
}

GridFunction tilt(const GridFunction& f, double tau, const Direction& dir) {
  if (!(tau >= 0)) throw DomainError("spectral", "tau must be nonnegative");
  const GridGeometry& g = f.geometry();
  if (dir.a.size() != static_cast<std::size_t>(g.n)) throw DomainError("spectral", "direction has the wrong dimension");
  if (tau == 0) return f;

  const double reach = std::max(std::abs(g.node(0)), std::abs(g.node(g.N - 1))) + 0.5 * g.spacing;
  double l_eff = 0;
  for (double c : dir.a) l_eff += std::abs(c) * reach;
  const double boundary = f.boundary_magnitude();
  if (boundary > 0 && !(tau * l_eff + std::log(boundary) < std::log(1e-10)))
    throw BoundaryError("spectral", "tilted function is not negligible on the box boundary (tau = " +
                                        std::to_string(tau) + "); use a larger L or a smaller tau");

  std::vector<double> factor(g.size());
  std::size_t idx[3] = {0, 0, 0};
  std::vector<std::vector<double>> axis(static_cast<std::size_t>(g.n), std::vector<double>(g.N));
  for (int d = 0; d < g.n; ++d)
    for (std::size_t j = 0; j < g.N; ++j)
      axis[static_cast<std::size_t>(d)][j] = std::exp(-tau * dir.a[static_cast<std::size_t>(d)] * g.node(j));
  const double global = std::exp(-tau * dir.b);
  for (std::size_t flat = 0; flat < factor.size(); ++flat) {
    g.indices(flat, std::span<std::size_t>(idx, static_cast<std::size_t>(g.n)));
    double v = global;
    for (int d = 0; d < g.n; ++d) v *= axis[static_cast<std::size_t>(d)][idx[d]];
    factor[flat] = v;
  }
  std::vector<cplx> data(f.values().begin(), f.values().end());
  kernels::scale_real(data, factor);
  return GridFunction(g, std::move(data), Domain::space);
}

std::vector<GridFunction> gradient(const GridFunction& f) {
  const GridFunction fhat = fourier(f, DualLayout::centered);
  const GridGeometry& dg = fhat.geometry();
  std::vector<GridFunction> out;
  std::vector<double> xi(dg.size());
  std::size_t idx[3] = {0, 0, 0};
  for (int d = 0; d < dg.n; ++d) {
    for (std::size_t flat = 0; flat < xi.size(); ++flat) {
      dg.indices(flat, std::span<std::size_t>(idx, static_cast<std::size_t>(dg.n)));
      xi[flat] = idx[d] == 0 ? 0.0 : dg.node(idx[d]);
    }
    std::vector<cplx> data(fhat.values().begin(), fhat.values().end());
    kernels::mul_i_real(data, xi);
    out.push_back(inverse_fourier(GridFunction(dg, std::move(data), Domain::frequency, fhat.conjugate_origin())));
  }
  return out;
}

std::vector<double> gradient_magnitude(std::span<const GridFunction> grad) {
  if (grad.empty()) return {};
  const std::size_t m = grad.front().size();
  std::vector<double> total(m, 0.0);
  std::vector<double> part(m);
  for (const GridFunction& g : grad) {
    kernels::abs2(g.values(), part);
    for (std::size_t i = 0; i < m; ++i) total[i] += part[i];
  }
  kernels::sqrt_inplace(total);
  return total;
}

std::vector<double> sample_weight(const GridGeometry& g, const Weight& w) {
  std::vector<double> out(g.size());
  double x[3];
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    g.coords(flat, std::span<double>(x, static_cast<std::size_t>(g.n)));
    const double v = w(std::span<const double>(x, static_cast<std::size_t>(g.n)));
    if (!std::isfinite(v) || v < 0)
      throw DomainError("spectral", "weight is not finite and nonnegative at a grid node");
    out[flat] = v;
  }
  return out;
}

double weighted_norm(std::span<const double> magnitudes, std::span<const double> w, double s, double cell_measure) {
  if (!(s >= 1) || !std::isfinite(s)) throw DomainError("spectral", "norm exponent must lie in [1, inf)");
  if (magnitudes.size() != w.size()) throw DomainError("spectral", "weight and data sizes differ");
  std::vector<double> t(magnitudes.size());
  if (s == 2) {
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = magnitudes[i] * magnitudes[i];
  } else if (s == 1) {
    std::copy(magnitudes.begin(), magnitudes.end(), t.begin());
  } else {
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = magnitudes[i] == 0 ? 0.0 : std::pow(magnitudes[i], s);
  }
  const double sum = kernels::weighted_sum(w, t) * cell_measure;
  return s == 2 ? std::sqrt(sum) : std::pow(sum, 1 / s);
}

std::vector<double> magnitudes(const GridFunction& f) {
  std::vector<double> m(f.size());
  kernels::abs2(f.values(), m);
  kernels::sqrt_inplace(m);
  return m;
}

double weighted_norm(const GridFunction& f, const Weight& w, double s) {
  const std::vector<double> wv = sample_weight(f.geometry(), w);
  return weighted_norm(magnitudes(f), wv, s, f.geometry().cell_measure());
}

}  // namespace carleman
