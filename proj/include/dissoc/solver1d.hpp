#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "dissoc/analytic1d.hpp"
#include "dissoc/minimizer.hpp"
#include "dissoc/model.hpp"
#include "dissoc/parallel.hpp"

namespace dissoc {

enum class InitKind { exponential, uniform, provided };

/// Starting density for a solve. `provided` uses `density` (values on the solve grid).
struct InitSpec {
  InitKind kind = InitKind::exponential;
  std::vector<double> density;
};

template <class Grid>
struct GroundState {
  DensityField<Grid> density;
  EnergyBreakdown energy;
  double residual = 0.0;
  double fermi = 0.0;
  int iterations = 0;
  double initial_energy = 0.0;
};

using LineGroundState = GroundState<LineGrid>;

struct DissociationPoint {
  double distance = 0.0;
  double energy = 0.0;
  EnergyBreakdown breakdown;
};

/// Spacing and margin of the line grids built around the wells.
struct LineGridSpec {
  double spacing = 0.005;
  double margin = 40.0;

  LineGrid atom() const { return LineGrid::with_spacing(-margin, margin, spacing); }

  /// Grid covering [-margin, R + margin] on which both 0 and R are nodes.
  LineGrid molecule(double distance) const {
    if (!(distance >= 0.0)) throw DomainError("internuclear distance must be nonnegative");
    const double snapped = snap(distance);
    const auto cells_left = static_cast<std::size_t>(std::llround(margin / spacing));
    const auto cells_mid = static_cast<std::size_t>(std::llround(snapped / spacing));
    const double x_min = -spacing * static_cast<double>(cells_left);
    return LineGrid(x_min, snapped + spacing * static_cast<double>(cells_left), 2 * cells_left + cells_mid + 1);
  }

  double snap(double distance) const { return spacing * std::round(distance / spacing); }
};

/// Boundary density allowed at convergence.
inline constexpr double boundary_density_limit = 1e-10;

namespace detail {

inline std::vector<double> line_init(const LineGrid& grid, const std::vector<std::pair<double, double>>& centers,
                                     const InitSpec& init) {
  std::vector<double> phi(grid.size(), 0.0);
  switch (init.kind) {
    case InitKind::provided:
      if (init.density.size() != grid.size()) throw DomainError("provided initial density does not match grid");
      for (std::size_t i = 0; i < phi.size(); ++i) {
        if (!(init.density[i] >= 0.0)) throw DomainError("provided initial density must be nonnegative");
        phi[i] = std::sqrt(init.density[i]);
      }
      break;
    case InitKind::uniform:
      std::fill(phi.begin(), phi.end(), 1.0);
      break;
    case InitKind::exponential:
      // rho ~ sum_k m_k e^{-2|x - x_k|}, the linear delta-well ground state.
      for (std::size_t i = 0; i < phi.size(); ++i) {
        double rho = 0.0;
        for (const auto& [x0, m] : centers) rho += m * std::exp(-2.0 * std::abs(grid.x(i) - x0));
        phi[i] = std::sqrt(rho);
      }
      break;
  }
  return phi;
}

inline void check_boundary(const std::vector<double>& phi) {
  const double left = phi.front() * phi.front();
  const double right = phi.back() * phi.back();
  if (left >= boundary_density_limit || right >= boundary_density_limit) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "grid too small: boundary density %.3g exceeds %.3g", std::max(left, right),
                  boundary_density_limit);
    throw GridTooSmallError(buf);
  }
}

inline LineGroundState line_state(const LineGrid& grid, MinimizerResult r) {
  check_boundary(r.amplitude);
  return {LineDensity::from_amplitude(grid, r.amplitude), r.energy, r.residual, r.fermi, r.iterations, r.initial_energy};
}

}  // namespace detail

/// Ground state of mass alpha for a single unit well at the origin.
inline LineGroundState minimize_atom_1d(double alpha, double c_xc, const SolverConfig& cfg, const LineGrid& grid,
                                        const InitSpec& init = {}) {
  if (!(alpha > 0.0)) throw DomainError("mass alpha must be positive");
  const LineFunctional f(grid, {{0.0, 1.0}}, ExchangeSpec::contact(c_xc));
  auto r = minimize_amplitude(f, detail::line_init(grid, {{0.0, 1.0}}, init), alpha, cfg);
  return detail::line_state(grid, std::move(r));
}

/// Ground state of mass lambda for unit wells at 0 and R. Runs from a
/// left-heavy, a right-heavy and a symmetric start and keeps the lowest energy
/// (first one wins on ties).
inline LineGroundState minimize_molecule_1d(double lambda, double distance, double c_xc, const SolverConfig& cfg,
                                            const LineGrid& grid, const InitSpec& init = {}) {
  if (!(lambda > 0.0)) throw DomainError("mass lambda must be positive");
  if (!(distance >= 0.0)) throw DomainError("internuclear distance must be nonnegative");
  const LineFunctional f(grid, {{0.0, 1.0}, {distance, 1.0}}, ExchangeSpec::contact(c_xc));
  const double right = grid.x(grid.nearest_index(distance));

  if (init.kind != InitKind::exponential) {
    auto r = minimize_amplitude(f, detail::line_init(grid, {}, init), lambda, cfg);
    return detail::line_state(grid, std::move(r));
  }
  const std::vector<std::vector<std::pair<double, double>>> starts = {
      {{0.0, 0.9}, {right, 0.1}}, {{0.0, 0.1}, {right, 0.9}}, {{0.0, 0.5}, {right, 0.5}}};
  std::optional<MinimizerResult> best;
  for (const auto& centers : starts) {
    auto r = minimize_amplitude(f, detail::line_init(grid, centers, init), lambda, cfg);
    if (!best || r.energy.total < best->energy.total) best = std::move(r);
  }
  return detail::line_state(grid, std::move(*best));
}

/// Exact or converged value of min_alpha (I_alpha + I_{lambda - alpha}).
/// Uses the closed form for c_xc >= 1/2. Below 1/2 the atom functional is
/// convex, the minimum is the symmetric split, and I_{lambda/2} comes from the
/// grid solver.
inline double dissociation_asymptote_1d(double lambda, double c_xc, const SolverConfig& cfg,
                                        const LineGridSpec& spec = {}) {
  if (!(lambda > 0.0)) throw DomainError("mass lambda must be positive");
  if (c_xc >= 0.5) {
    // concave (flat at 1/2) in alpha, so alpha = 0 attains the minimum
    return analytic::atom_energy_exact(lambda, c_xc);
  }
  return 2.0 * minimize_atom_1d(0.5 * lambda, c_xc, cfg, spec.atom()).energy.total;
}

inline std::vector<DissociationPoint> dissociation_curve_1d(double lambda, double c_xc,
                                                            const std::vector<double>& distances,
                                                            const SolverConfig& cfg, const LineGridSpec& spec = {},
                                                            unsigned jobs = 1) {
  if (!(lambda > 0.0) || lambda > 2.0) throw DomainError("lambda must lie in (0, 2]");
  for (std::size_t i = 0; i < distances.size(); ++i) {
    if (!(distances[i] >= 0.0)) throw DomainError("distances must be nonnegative");
    if (i > 0 && !(distances[i] > distances[i - 1])) throw DomainError("distances must be increasing");
  }
  return parallel_map(distances.size(), jobs, [&](std::size_t i) {
    const double distance = spec.snap(distances[i]);
    try {
      auto s = minimize_molecule_1d(lambda, distance, c_xc, cfg, spec.molecule(distance));
      return DissociationPoint{distance, s.energy.total, s.energy};
    } catch (const SolverFailure& e) {
      throw SolverFailure(std::string(e.what()) + " at R=" + std::to_string(distance), e.diagnostics(),
                          e.last_iterate());
    }
  });
}

struct LineResidual {
  double residual = 0.0;
  double fermi = 0.0;
};

/// ||h phi - mu phi|| / ||phi|| for the line Hamiltonian at phi = sqrt(rho),
/// with the discrete delta wells.
inline LineResidual euler_lagrange_residual_1d(const LineDensity& density, const std::vector<Well>& wells,
                                               double c_xc) {
  const LineFunctional f(density.grid(), wells, ExchangeSpec::contact(c_xc));
  const auto phi = density.amplitude();
  if (!(density.mass() > 0.0)) throw DomainError("Euler-Lagrange residual needs a nonzero density");
  const auto r = detail::projected_residual(f, phi, f.effective_potential(phi));
  return {r.norm, r.fermi};
}

}  // namespace dissoc
