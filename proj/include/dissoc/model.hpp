#pragma once

#include <span>
#include <vector>

#include "dissoc/functional.hpp"
#include "dissoc/grid.hpp"

namespace dissoc {

/// Energy of a density on the line in the contact-interaction model
///   1/2 int (sqrt(rho)')^2 - sum_k Z_k rho(x_k) + (1/2 - c) int rho^2.
/// Wells are sampled at the nearest grid point.
inline EnergyBreakdown energy_1d(const LineDensity& density, const std::vector<Well>& wells, ExchangeSpec xc) {
  const LineFunctional f(density.grid(), wells, xc);
  return f.energy(density.amplitude());
}

/// Radial energy 1/2 int |grad sqrt(rho)|^2 - Z int rho/r + J[rho] + int e_xc(rho).
inline EnergyBreakdown energy_3d(const RadialDensity& density, double z, ExchangeSpec xc, TermFlags flags = {}) {
  const RadialFunctional f(density.grid(), z, xc, flags);
  return f.energy(density.amplitude());
}

inline std::vector<double> hartree_potential_radial(const RadialDensity& density) {
  return hartree_potential(density.grid(), density.values());
}

/// J[rho] = 1/2 int rho v_H.
inline double hartree_energy(const RadialDensity& density) {
  const auto v = hartree_potential_radial(density);
  const auto rho = density.values();
  const auto w = density.grid().weights();
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += w[i] * rho[i] * v[i];
  return 0.5 * s;
}

}  // namespace dissoc
