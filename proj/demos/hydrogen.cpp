// Radial solves at unit mass: bare hydrogen, then Hartree and Dirac exchange on.
#include <cstdio>

#include "dissoc/dissoc.hpp"

int main() {
  using namespace dissoc;
  const auto grid = RadialGrid::for_charge(1.0);
  const SolverConfig cfg;

  const auto bare = minimize_radial(1.0, 1.0, 0.0, cfg, grid, {false, false});
  std::printf("bare hydrogen     E = %.8f  (exact -0.5)\n", bare.state.energy.total);

  const auto full = minimize_radial(1.0, 1.0, ueg_exchange_strength(), cfg, grid);
  const auto& e = full.state.energy;
  std::printf("with J and Dirac  E = %.8f  T = %.6f  V = %.6f  J = %.6f  Exc = %.6f  eps_F = %.6f\n", e.total,
              e.kinetic, e.external, e.hartree, e.exchange, full.state.fermi);
  std::printf("2J + 4/9 Exc      = %.6f\n", splitting_curvature(e));
}
