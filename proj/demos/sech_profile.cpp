// Closed-form 1D atom against the grid solver for a few masses.
#include <cstdio>

#include "dissoc/dissoc.hpp"

int main() {
  using namespace dissoc;
  const double c = 1.0;
  const LineGridSpec spec;
  std::printf("%6s %14s %14s %10s\n", "alpha", "exact", "grid", "rel.err");
  for (double alpha : {0.25, 0.5, 1.0, 1.5, 2.0}) {
    const double exact = analytic::atom_energy_exact(alpha, c);
    const double grid = minimize_atom_1d(alpha, c, {}, spec.atom()).energy.total;
    std::printf("%6.2f %14.10f %14.10f %10.2e\n", alpha, exact, grid, std::abs(grid - exact) / std::abs(exact));
  }
  const auto s = analytic::sech_params(1.0, c);
  std::printf("alpha=1: a=%.6f b=%.6f x0=%.6f\n", s.a, s.b, s.x0);
}
