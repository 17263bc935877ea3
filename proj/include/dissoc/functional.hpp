#pragma once

// Discrete energy functionals in the amplitude phi = sqrt(rho).
//
// Every functional has the form
//
//   E(phi) = 1/2 sum_e k_e (phi_{i+1} - phi_i)^2 + sum_i w_i V_i phi_i^2 + G(phi^2)
//
// and exposes the effective potential U = V + dG/drho so that the gradient is
// dE/dphi_i = (L phi)_i + 2 w_i U_i phi_i with L the edge Laplacian. The
// minimizer works with the weighted Hamiltonian H = W^-1 L / 2 + U.

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "dissoc/grid.hpp"

namespace dissoc {

/// A point well -Z delta(x - position) on the line.
struct Well {
  double position = 0.0;
  double strength = 1.0;
};

namespace detail {

template <class Grid>
double gradient_energy(const Grid& grid, std::span<const double> phi) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < phi.size(); ++i) {
    const double d = phi[i + 1] - phi[i];
    s += grid.edge_coupling(i) * d * d;
  }
  return 0.5 * s;
}

/// (L phi)_i for the edge Laplacian of the gradient term.
template <class Grid>
void apply_edge_laplacian(const Grid& grid, std::span<const double> phi, std::span<double> out) {
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t i = 0; i + 1 < phi.size(); ++i) {
    const double f = grid.edge_coupling(i) * (phi[i] - phi[i + 1]);
    out[i] += f;
    out[i + 1] -= f;
  }
}

}  // namespace detail

/// Shell-theorem potential of a radial density at the grid points,
/// v_i = sum_j w_j rho_j / max(r_i, r_j). This is the trapezoidal quadrature
/// of (1/r) int_0^r 4 pi s^2 rho + int_r^inf 4 pi s rho, and the matching
/// discrete J = 1/2 sum_i w_i rho_i v_i is a symmetric bilinear form.
inline std::vector<double> hartree_potential(const RadialGrid& grid, std::span<const double> rho) {
  const auto n = grid.size();
  const auto w = grid.weights();
  std::vector<double> v(n, 0.0);
  double inner = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    inner += w[i] * rho[i];
    v[i] = inner / grid.r(i);
  }
  double outer = 0.0;
  for (std::size_t i = n; i-- > 0;) {
    v[i] += outer;
    outer += w[i] * rho[i] / grid.r(i);
  }
  return v;
}

/// Contact-interaction functional on the line with point wells:
///   E = 1/2 int (phi')^2 - sum_k Z_k rho(x_k) + 1/2 int rho^2 - c int rho^2.
class LineFunctional {
public:
  LineFunctional(LineGrid grid, std::vector<Well> wells, ExchangeSpec xc, TermFlags flags = {})
      : grid_(std::move(grid)), xc_(xc), flags_(flags), wells_(std::move(wells)) {
    if (xc_.kind != ExchangeKind::contact_1d) throw DomainError("line functional requires contact exchange");
    for (const auto& well : wells_) {
      if (!(well.strength > 0.0)) throw DomainError("well strength must be positive");
      well_index_.push_back(grid_.nearest_index(well.position));
    }
  }

  const LineGrid& grid() const noexcept { return grid_; }
  std::span<const double> weights() const noexcept { return grid_.weights(); }
  double edge_coupling(std::size_t i) const noexcept { return grid_.edge_coupling(i); }
  const std::vector<Well>& wells() const noexcept { return wells_; }
  const std::vector<std::size_t>& well_indices() const noexcept { return well_index_; }
  const ExchangeSpec& exchange() const noexcept { return xc_; }

  EnergyBreakdown energy(std::span<const double> phi) const {
    const double kinetic = detail::gradient_energy(grid_, phi);
    double external = 0.0;
    for (std::size_t k = 0; k < wells_.size(); ++k) {
      const double a = phi[well_index_[k]];
      external -= wells_[k].strength * a * a;
    }
    double rho2 = 0.0;
    const auto w = grid_.weights();
    for (std::size_t i = 0; i < phi.size(); ++i) {
      const double rho = phi[i] * phi[i];
      rho2 += w[i] * rho * rho;
    }
    const double hartree = flags_.hartree ? 0.5 * rho2 : 0.0;
    const double exchange = flags_.exchange ? -xc_.c_xc * rho2 : 0.0;
    return EnergyBreakdown::from_parts(kinetic, external, hartree, exchange);
  }

  std::vector<double> effective_potential(std::span<const double> phi) const {
    std::vector<double> u(phi.size(), 0.0);
    const auto w = grid_.weights();
    for (std::size_t i = 0; i < phi.size(); ++i) {
      const double rho = phi[i] * phi[i];
      if (flags_.hartree) u[i] += rho;
      if (flags_.exchange) u[i] += xc_.derivative(rho);
    }
    for (std::size_t k = 0; k < wells_.size(); ++k) u[well_index_[k]] -= wells_[k].strength / w[well_index_[k]];
    return u;
  }

private:
  LineGrid grid_;
  ExchangeSpec xc_;
  TermFlags flags_;
  std::vector<Well> wells_;
  std::vector<std::size_t> well_index_;
};

/// Radial TFDW-type functional around a nucleus of charge Z:
///   E = 1/2 int |grad phi|^2 - Z int rho / r + s_H J[rho] + int e_xc(rho).
/// The Hartree scale s_H is 1 for the physical functional.
class RadialFunctional {
public:
  RadialFunctional(RadialGrid grid, double z, ExchangeSpec xc, TermFlags flags = {}, double hartree_scale = 1.0)
      : grid_(std::move(grid)), z_(z), xc_(xc), flags_(flags), hartree_scale_(hartree_scale) {
    if (!(z > 0.0)) throw DomainError("nuclear charge must be positive");
    if (xc_.kind != ExchangeKind::dirac_3d) throw DomainError("radial functional requires Dirac exchange");
  }

  const RadialGrid& grid() const noexcept { return grid_; }
  std::span<const double> weights() const noexcept { return grid_.weights(); }
  double edge_coupling(std::size_t i) const noexcept { return grid_.edge_coupling(i); }
  double charge() const noexcept { return z_; }
  const ExchangeSpec& exchange() const noexcept { return xc_; }
  const TermFlags& flags() const noexcept { return flags_; }

  EnergyBreakdown energy(std::span<const double> phi) const {
    const auto w = grid_.weights();
    const auto n = phi.size();
    std::vector<double> rho(n);
    for (std::size_t i = 0; i < n; ++i) rho[i] = phi[i] * phi[i];

    const double kinetic = detail::gradient_energy(grid_, phi);
    double external = 0.0;
    double exchange = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      external -= z_ * w[i] * rho[i] / grid_.r(i);
      if (flags_.exchange) exchange += w[i] * xc_.energy_density(rho[i]);
    }
    double hartree = 0.0;
    if (flags_.hartree) {
      const auto v = hartree_potential(grid_, rho);
      for (std::size_t i = 0; i < n; ++i) hartree += w[i] * rho[i] * v[i];
      hartree *= 0.5 * hartree_scale_;
    }
    return EnergyBreakdown::from_parts(kinetic, external, hartree, exchange);
  }

  /// Full second derivative d^2E / dphi_i dphi_k (dense through the Hartree kernel).
  Eigen::MatrixXd hessian(std::span<const double> phi) const {
    const auto n = static_cast<Eigen::Index>(phi.size());
    const auto w = grid_.weights();
    const auto u = effective_potential(phi);
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
      const double k = grid_.edge_coupling(static_cast<std::size_t>(i));
      h(i, i) += k;
      h(i + 1, i + 1) += k;
      h(i, i + 1) -= k;
      h(i + 1, i) -= k;
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      const double rho = phi[ui] * phi[ui];
      h(i, i) += 2.0 * w[ui] * u[ui];
      if (flags_.exchange) h(i, i) += 4.0 * w[ui] * rho * second_derivative(rho);
    }
    if (flags_.hartree) {
      for (Eigen::Index i = 0; i < n; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        const double a = 4.0 * hartree_scale_ * w[ui] * phi[ui];
        for (Eigen::Index k = 0; k < n; ++k) {
          const auto uk = static_cast<std::size_t>(k);
          h(i, k) += a * w[uk] * phi[uk] / std::max(grid_.r(ui), grid_.r(uk));
        }
      }
    }
    return h;
  }

  std::vector<double> effective_potential(std::span<const double> phi) const {
    const auto n = phi.size();
    std::vector<double> rho(n);
    for (std::size_t i = 0; i < n; ++i) rho[i] = phi[i] * phi[i];
    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = -z_ / grid_.r(i);
    if (flags_.hartree) {
      const auto v = hartree_potential(grid_, rho);
      for (std::size_t i = 0; i < n; ++i) u[i] += hartree_scale_ * v[i];
    }
    if (flags_.exchange)
      for (std::size_t i = 0; i < n; ++i) u[i] += xc_.derivative(rho[i]);
    return u;
  }

private:
  // rho e_xc''(rho) stays finite at rho = 0 for the Dirac form.
  double second_derivative(double rho) const {
    return rho > 0.0 ? -(4.0 / 9.0) * xc_.c_xc * std::pow(rho, -2.0 / 3.0) : 0.0;
  }

  RadialGrid grid_;
  double z_;
  ExchangeSpec xc_;
  TermFlags flags_;
  double hartree_scale_;
};

/// dE/dphi for any of the functionals above.
template <class Functional>
std::vector<double> energy_gradient(const Functional& f, std::span<const double> phi) {
  std::vector<double> g(phi.size());
  detail::apply_edge_laplacian(f.grid(), phi, g);
  const auto u = f.effective_potential(phi);
  const auto w = f.weights();
  for (std::size_t i = 0; i < phi.size(); ++i) g[i] += 2.0 * w[i] * u[i] * phi[i];
  return g;
}

/// H phi = W^-1 L phi / 2 + U phi with U the effective potential at phi.
template <class Functional>
std::vector<double> apply_hamiltonian(const Functional& f, std::span<const double> phi,
                                      std::span<const double> potential) {
  std::vector<double> out(phi.size());
  detail::apply_edge_laplacian(f.grid(), phi, out);
  const auto w = f.weights();
  for (std::size_t i = 0; i < phi.size(); ++i) out[i] = 0.5 * out[i] / w[i] + potential[i] * phi[i];
  return out;
}

}  // namespace dissoc
