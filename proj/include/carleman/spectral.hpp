#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "carleman/weights.hpp"

namespace carleman {

using cplx = std::complex<double>;

/// Uniform tensor grid with the same nodes on every axis:
/// node(j) = origin + j * spacing, j = 0..N-1, stored row-major (last axis fastest).
struct GridGeometry {
  int n = 1;
  std::size_t N = 0;
  double origin = 0;
  double spacing = 0;

  std::size_t size() const;
  double node(std::size_t j) const { return origin + static_cast<double>(j) * spacing; }
  double cell_measure() const;
  /// Coordinates of the flat index into x (size n).
  void coords(std::size_t flat, std::span<double> x) const;
  /// Per-axis indices of a flat index.
  void indices(std::size_t flat, std::span<std::size_t> j) const;

  /// Midpoint-offset box grid: origin = -L + h/2, h = 2L/N.
  static GridGeometry box(int n, double half_width, std::size_t N);
  double half_width() const { return 0.5 * spacing * static_cast<double>(N); }
};

enum class Domain { space, frequency };

/// Complex samples on a GridGeometry. A frequency-domain function also
/// remembers the origin of the spatial grid it came from, which the inverse
/// transform needs.
class GridFunction {
 public:
  GridFunction() = default;
  GridFunction(GridGeometry g, std::vector<cplx> values, Domain domain = Domain::space,
               double conjugate_origin = 0);

  const GridGeometry& geometry() const { return g_; }
  Domain domain() const { return domain_; }
  double conjugate_origin() const { return conjugate_origin_; }
  std::span<const cplx> values() const { return v_; }
  std::span<cplx> values() { return v_; }
  std::size_t size() const { return v_.size(); }

  double max_abs() const;
  /// max |f| over cells with some index 0 or N-1, relative to max |f| (0 for f = 0).
  double boundary_magnitude() const;

 private:
  GridGeometry g_;
  std::vector<cplx> v_;
  Domain domain_ = Domain::space;
  double conjugate_origin_ = 0;
};

/// Relative boundary level below which a sampled function counts as compactly supported.
inline constexpr double kBoundaryTol = 1e-12;

struct Sampled {
  GridFunction f;
  double boundary = 0;  ///< measured relative boundary magnitude
  bool warning = false;
  std::string message;
};

/// Samples fn at the midpoint nodes of [-L, L]^n. N must be a power of two, at least 16.
Sampled sample(const std::function<cplx(std::span<const double>)>& fn, int n, double half_width,
               std::size_t N);

/// Unit direction a and offset b of l(x) = <a, x> + b.
struct Direction {
  std::vector<double> a;
  double b = 0;

  static Direction make(std::vector<double> a, double b = 0);
  static Direction axis(int n, int k);
};

/// Dual-grid layouts. centered: xi_k = -pi/h + k pi/L (contains xi = 0);
/// midpoint: shifted by half a step, so xi = 0 is never a node.
enum class DualLayout { centered, midpoint };

/// Discrete approximation of the integral of f(x) e^(-i<x, xi>) dx.
GridFunction fourier(const GridFunction& f, DualLayout layout = DualLayout::centered);

/// Exact inverse of fourier() on its own output.
GridFunction inverse_fourier(const GridFunction& fhat);

/// f(x) e^(-tau <a, x>) e^(-tau b). Throws BoundaryError unless
/// tau * L_eff + log(boundary) < log(1e-10), with L_eff = sum |a_i| L.
GridFunction tilt(const GridFunction& f, double tau, const Direction& dir);

/// Spectral partial derivatives (Nyquist mode dropped).
std::vector<GridFunction> gradient(const GridFunction& f);

/// |grad f| pointwise from the gradient components.
std::vector<double> gradient_magnitude(std::span<const GridFunction> grad);

/// w at every node of g. Throws DomainError on a negative or non-finite value.
std::vector<double> sample_weight(const GridGeometry& g, const Weight& w);

/// (sum_j w_j m_j^s cell)^(1/s) for nonnegative magnitudes m.
double weighted_norm(std::span<const double> magnitudes, std::span<const double> w, double s,
                     double cell_measure);

/// (sum_j w(x_j) |f(x_j)|^s h^n)^(1/s).
double weighted_norm(const GridFunction& f, const Weight& w, double s);

/// |f| at every node.
std::vector<double> magnitudes(const GridFunction& f);

}  // namespace carleman
