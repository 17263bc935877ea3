#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dissoc/errors.hpp"

namespace dissoc {

enum class ExchangeKind { contact_1d, dirac_3d };

/// Local exchange energy per volume e_xc(rho).
///
/// contact_1d:  e_xc(rho) = -c rho^2       (1D contact-interaction model)
/// dirac_3d:    e_xc(rho) = -c rho^(4/3)   (homogeneous electron gas)
struct ExchangeSpec {
  ExchangeKind kind = ExchangeKind::contact_1d;
  double c_xc = 0.0;

  static ExchangeSpec contact(double c) { return checked({ExchangeKind::contact_1d, c}); }
  static ExchangeSpec dirac(double c) { return checked({ExchangeKind::dirac_3d, c}); }

  double energy_density(double rho) const {
    return kind == ExchangeKind::contact_1d ? -c_xc * rho * rho : -c_xc * std::pow(rho, 4.0 / 3.0);
  }

  /// d e_xc / d rho. Continuous at rho = 0 for both kinds.
  double derivative(double rho) const {
    return kind == ExchangeKind::contact_1d ? -2.0 * c_xc * rho
                                            : -(4.0 / 3.0) * c_xc * std::cbrt(rho);
  }

  /// Exponent p of the homogeneity e_xc(t rho) = t^p e_xc(rho).
  double homogeneity() const { return kind == ExchangeKind::contact_1d ? 2.0 : 4.0 / 3.0; }

private:
  static ExchangeSpec checked(ExchangeSpec s) {
    if (!(s.c_xc >= 0.0) || !std::isfinite(s.c_xc))
      throw DomainError("exchange strength c_xc must be finite and nonnegative");
    return s;
  }
};

/// Uniform grid on [x_min, x_max] with trapezoidal weights.
class LineGrid {
public:
  LineGrid(double x_min, double x_max, std::size_t n) : x_min_(x_min), n_(n) {
    if (n < 3) throw DomainError("LineGrid needs at least 3 points");
    if (!(x_max > x_min)) throw DomainError("LineGrid needs x_max > x_min");
    h_ = (x_max - x_min) / static_cast<double>(n - 1);
    weights_.assign(n, h_);
    weights_.front() = weights_.back() = 0.5 * h_;
  }

  /// Grid with spacing close to h covering [x_min, x_max]; the spacing is
  /// adjusted so that both end points lie on the grid.
  static LineGrid with_spacing(double x_min, double x_max, double h) {
    if (!(h > 0.0)) throw DomainError("grid spacing must be positive");
    const auto cells = static_cast<std::size_t>(std::llround((x_max - x_min) / h));
    return LineGrid(x_min, x_max, std::max<std::size_t>(cells, 2) + 1);
  }

  std::size_t size() const noexcept { return n_; }
  double spacing() const noexcept { return h_; }
  double x_min() const noexcept { return x_min_; }
  double x_max() const noexcept { return x(n_ - 1); }
  double x(std::size_t i) const noexcept { return x_min_ + h_ * static_cast<double>(i); }
  bool contains(double pos) const noexcept { return pos >= x_min_ - 1e-12 && pos <= x_max() + 1e-12; }

  std::size_t nearest_index(double pos) const {
    if (!contains(pos)) throw DomainError("position " + std::to_string(pos) + " outside grid span");
    const auto i = std::llround((pos - x_min_) / h_);
    return static_cast<std::size_t>(std::clamp<long long>(i, 0, static_cast<long long>(n_) - 1));
  }

  std::span<const double> weights() const noexcept { return weights_; }

  /// Kinetic coupling of edge (i, i+1): the term is k_e (phi_{i+1} - phi_i)^2 / 2.
  double edge_coupling(std::size_t) const noexcept { return 1.0 / h_; }

private:
  double x_min_;
  double h_ = 0.0;
  std::size_t n_;
  std::vector<double> weights_;
};

/// Log-spaced radial grid r_i = r_min exp(i dt). Weights integrate
/// f against 4 pi r^2 dr with the trapezoidal rule in t = ln r.
class RadialGrid {
public:
  RadialGrid(double r_min, double r_max, std::size_t n) {
    if (n < 3) throw DomainError("RadialGrid needs at least 3 points");
    if (!(r_min > 0.0) || !(r_max > r_min)) throw DomainError("RadialGrid needs 0 < r_min < r_max");
    dt_ = std::log(r_max / r_min) / static_cast<double>(n - 1);
    r_.resize(n);
    w_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      r_[i] = r_min * std::exp(dt_ * static_cast<double>(i));
      w_[i] = 4.0 * std::numbers::pi * r_[i] * r_[i] * r_[i] * dt_;
    }
    w_.front() *= 0.5;
    w_.back() *= 0.5;
    r_.back() = r_max;
  }

  /// Default grid for nuclear charge z: [1e-5, 60] / z with 600 points.
  static RadialGrid for_charge(double z, std::size_t n = 600) {
    if (!(z > 0.0)) throw DomainError("nuclear charge must be positive");
    return RadialGrid(1e-5 / z, 60.0 / z, n);
  }

  std::size_t size() const noexcept { return r_.size(); }
  double log_step() const noexcept { return dt_; }
  double r(std::size_t i) const noexcept { return r_[i]; }
  std::span<const double> radii() const noexcept { return r_; }
  std::span<const double> weights() const noexcept { return w_; }

  /// Midpoint rule in t for the gradient term: 4 pi r_e / dt with r_e the
  /// geometric mean of the edge end points.
  double edge_coupling(std::size_t i) const noexcept {
    return 4.0 * std::numbers::pi * std::sqrt(r_[i] * r_[i + 1]) / dt_;
  }

private:
  std::vector<double> r_;
  std::vector<double> w_;
  double dt_ = 0.0;
};

template <class Grid>
double integrate(const Grid& grid, std::span<const double> f) {
  const auto w = grid.weights();
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += w[i] * f[i];
  return s;
}

/// Nonnegative density sampled on a grid; the mass is its quadrature.
template <class Grid>
class DensityField {
public:
  DensityField(Grid grid, std::vector<double> values) : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_.size()) throw DomainError("density size does not match grid");
    for (double v : values_) {
      if (!std::isfinite(v)) throw DomainError("density values must be finite");
      if (v < 0.0) throw DomainError("density values must be nonnegative");
    }
    mass_ = integrate(grid_, values_);
  }

  /// Density rho = phi^2 from an orbital-like amplitude.
  static DensityField from_amplitude(Grid grid, std::span<const double> phi) {
    std::vector<double> rho(phi.size());
    for (std::size_t i = 0; i < phi.size(); ++i) rho[i] = phi[i] * phi[i];
    return DensityField(std::move(grid), std::move(rho));
  }

  const Grid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  double mass() const noexcept { return mass_; }

  std::vector<double> amplitude() const {
    std::vector<double> phi(values_.size());
    for (std::size_t i = 0; i < phi.size(); ++i) phi[i] = std::sqrt(values_[i]);
    return phi;
  }

  DensityField scaled(double t) const {
    if (!(t >= 0.0)) throw DomainError("density scale factor must be nonnegative");
    std::vector<double> v(values_);
    for (double& x : v) x *= t;
    return DensityField(grid_, std::move(v));
  }

private:
  Grid grid_;
  std::vector<double> values_;
  double mass_ = 0.0;
};

using LineDensity = DensityField<LineGrid>;
using RadialDensity = DensityField<RadialGrid>;

/// Energy components in Hartree units.
struct EnergyBreakdown {
  double kinetic = 0.0;
  double external = 0.0;
  double hartree = 0.0;
  double exchange = 0.0;
  double total = 0.0;

  static EnergyBreakdown from_parts(double kinetic, double external, double hartree, double exchange) {
    return {kinetic, external, hartree, exchange, kinetic + external + hartree + exchange};
  }
};

/// Which interaction terms enter a functional.
struct TermFlags {
  bool hartree = true;
  bool exchange = true;
};

}  // namespace dissoc
