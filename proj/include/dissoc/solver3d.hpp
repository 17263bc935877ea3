#pragma once

// Radial von Weizsaecker + Hartree + Dirac exchange atom with fractional
// electron number, and the splitting scans built on it.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "dissoc/minimizer.hpp"
#include "dissoc/model.hpp"
#include "dissoc/parallel.hpp"
#include "dissoc/solver1d.hpp"

namespace dissoc {

using RadialGroundState = GroundState<RadialGrid>;

struct RadialSolution {
  RadialGroundState state;
  /// alpha > 2Z: computed, but existence of a minimizer is not guaranteed there.
  bool beyond_existence = false;
  /// Fermi level >= 0: the box holds mass that would not bind in whole space.
  bool unbound = false;
};

/// Strength of the homogeneous-electron-gas exchange, 3/4 (3/pi)^(1/3).
inline double ueg_exchange_strength() { return 0.75 * std::cbrt(3.0 / std::numbers::pi); }

/// Above this strength the radial solver runs from several starts.
inline constexpr double multistart_threshold = 1.0;

namespace detail {

inline std::vector<double> radial_profile(const RadialGrid& grid, double decay, double power) {
  std::vector<double> phi(grid.size());
  for (std::size_t i = 0; i < phi.size(); ++i) {
    const double r = grid.r(i);
    phi[i] = std::pow(r, power) * std::exp(-decay * r);
  }
  return phi;
}

}  // namespace detail

/// Minimizer of the radial functional at mass alpha.
inline RadialSolution minimize_radial(double alpha, double z, double c_xc, const SolverConfig& cfg,
                                      const RadialGrid& grid, TermFlags flags = {}, const InitSpec& init = {}) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("mass alpha must be positive");
  const RadialFunctional f(grid, z, ExchangeSpec::dirac(c_xc), flags);

  std::vector<std::vector<double>> starts;
  switch (init.kind) {
    case InitKind::provided: {
      if (init.density.size() != grid.size()) throw DomainError("provided initial density does not match grid");
      std::vector<double> phi(grid.size());
      for (std::size_t i = 0; i < phi.size(); ++i) phi[i] = std::sqrt(std::max(0.0, init.density[i]));
      starts.push_back(std::move(phi));
      break;
    }
    case InitKind::uniform:
      starts.push_back(detail::radial_profile(grid, 0.0, 0.0));
      break;
    case InitKind::exponential:
      starts.push_back(detail::radial_profile(grid, z, 0.0));
      if (flags.exchange && c_xc > multistart_threshold) {
        const double compact = z + c_xc * std::cbrt(alpha);
        starts.push_back(detail::radial_profile(grid, compact, 0.0));
        starts.push_back(detail::radial_profile(grid, 0.25 * z, 0.0));  // diffuse
        starts.push_back(detail::radial_profile(grid, z, 2.0));         // shell
      }
      break;
  }

  std::optional<MinimizerResult> best;
  for (auto& phi : starts) {
    auto r = minimize_amplitude(f, std::move(phi), alpha, cfg);
    if (!best || r.energy.total < best->energy.total) best = std::move(r);
  }
  RadialGroundState state{RadialDensity::from_amplitude(grid, best->amplitude), best->energy, best->residual,
                          best->fermi, best->iterations, best->initial_energy};
  const bool unbound = !(state.fermi < 0.0);
  return {std::move(state), alpha > 2.0 * z, unbound};
}

struct SplittingSample {
  double alpha = 0.0;
  double energy = 0.0;             // I_alpha
  double complement_energy = 0.0;  // I_{Lambda - alpha}
  double sum = 0.0;
};

struct SplittingScan {
  double total_mass = 0.0;
  double c_xc = 0.0;
  double step = 0.0;
  std::vector<SplittingSample> samples;
  double argmin_alpha = 0.0;
  bool symmetric = false;
};

/// Builds the scan record from I values on the ladder alpha_k = k step,
/// k = 0..2K, with Lambda = 2K step. Ties in the sum go to the smaller alpha;
/// "symmetric" means the argmin is within one step of Lambda/2.
inline SplittingScan assemble_scan(double total_mass, double c_xc, double step, const std::vector<double>& ladder_energy) {
  SplittingScan scan{total_mass, c_xc, step, {}, 0.0, false};
  const std::size_t last = ladder_energy.size() - 1;
  const std::size_t half = last / 2;
  double best = 0.0;
  for (std::size_t k = 0; k <= half; ++k) {
    const double alpha = step * static_cast<double>(k);
    SplittingSample s{alpha, ladder_energy[k], ladder_energy[last - k], ladder_energy[k] + ladder_energy[last - k]};
    if (k == 0 || s.sum < best) {
      best = s.sum;
      scan.argmin_alpha = alpha;
    }
    scan.samples.push_back(s);
  }
  scan.symmetric = std::abs(scan.argmin_alpha - 0.5 * total_mass) <= step * (1.0 + 1e-9);
  return scan;
}

namespace detail {

inline std::size_t ladder_half_count(double n_electrons, double step) {
  if (!(n_electrons > 0.0)) throw DomainError("electron count must be positive");
  if (!(step > 0.0)) throw DomainError("alpha step must be positive");
  const double k = n_electrons / step;
  const auto half = static_cast<std::size_t>(std::llround(k));
  if (half == 0 || std::abs(k - static_cast<double>(half)) > 1e-9 * std::max(1.0, k))
    throw DomainError("alpha step must divide N evenly");
  return half;
}

}  // namespace detail

/// alpha -> I_alpha + I_{2N - alpha} on [0, N] for a neutral atom of charge Z = N.
inline SplittingScan splitting_scan_3d(double n_electrons, double c_xc, double step, const SolverConfig& cfg,
                                       const RadialGrid& grid, unsigned jobs = 1) {
  const auto half = detail::ladder_half_count(n_electrons, step);
  const std::size_t last = 2 * half;
  const double z = n_electrons;
  const auto energies = parallel_map(last + 1, jobs, [&](std::size_t k) {
    if (k == 0) return 0.0;
    const double alpha = n_electrons * static_cast<double>(k) / static_cast<double>(half);
    try {
      return minimize_radial(alpha, z, c_xc, cfg, grid).state.energy.total;
    } catch (const SolverFailure& e) {
      throw SolverFailure(std::string(e.what()) + " at alpha=" + std::to_string(alpha), e.diagnostics(),
                          e.last_iterate());
    }
  });
  return assemble_scan(2.0 * n_electrons, c_xc, step, energies);
}

/// 1D counterpart: grid solves of the contact-interaction atom, Lambda = 2N.
inline SplittingScan splitting_scan_1d(double n_electrons, double c_xc, double step, const SolverConfig& cfg,
                                       const LineGridSpec& spec = {}, unsigned jobs = 1) {
  const auto half = detail::ladder_half_count(n_electrons, step);
  const std::size_t last = 2 * half;
  const auto energies = parallel_map(last + 1, jobs, [&](std::size_t k) {
    if (k == 0) return 0.0;
    const double alpha = n_electrons * static_cast<double>(k) / static_cast<double>(half);
    try {
      return minimize_atom_1d(alpha, c_xc, cfg, spec.atom()).energy.total;
    } catch (const SolverFailure& e) {
      throw SolverFailure(std::string(e.what()) + " at alpha=" + std::to_string(alpha), e.diagnostics(),
                          e.last_iterate());
    }
  });
  return assemble_scan(2.0 * n_electrons, c_xc, step, energies);
}

struct ThresholdProbe {
  double c_xc = 0.0;
  double argmin_alpha = 0.0;
  bool symmetric = false;
};

struct ThresholdBracket {
  double n_electrons = 0.0;
  double c_low = 0.0;
  double c_high = 0.0;
  std::vector<ThresholdProbe> probes;
};

/// Bisection on c_xc for the onset of symmetry breaking. Each probe is a full
/// splitting scan.
inline ThresholdBracket symmetry_threshold(double n_electrons, double c_low, double c_high, double tol, double step,
                                           const SolverConfig& cfg, const RadialGrid& grid, unsigned jobs = 1) {
  if (!(c_low < c_high) || !(c_low >= 0.0)) throw DomainError("threshold search needs 0 <= c_low < c_high");
  if (!(tol > 0.0)) throw DomainError("threshold tolerance must be positive");
  ThresholdBracket out{n_electrons, c_low, c_high, {}};
  auto probe = [&](double c) {
    const auto scan = splitting_scan_3d(n_electrons, c, step, cfg, grid, jobs);
    out.probes.push_back({c, scan.argmin_alpha, scan.symmetric});
    return scan.symmetric;
  };
  const bool low_symmetric = probe(c_low);
  const bool high_symmetric = probe(c_high);
  if (!low_symmetric || high_symmetric) {
    const char* why = low_symmetric ? "both endpoints symmetric" : (high_symmetric ? "endpoints reversed" : "both endpoints asymmetric");
    throw DomainError(std::string("interval does not bracket the transition: ") + why);
  }
  while (out.c_high - out.c_low > tol) {
    const double mid = 0.5 * (out.c_low + out.c_high);
    if (probe(mid))
      out.c_low = mid;
    else
      out.c_high = mid;
  }
  return out;
}

/// Exchange strength above which symmetry breaking is guaranteed by the
/// Hardy-Littlewood-Sobolev estimate:
/// (9/4) sqrt(pi) Gamma(1)/Gamma(5/2) (Gamma(3)/Gamma(3/2))^(2/3) N^(2/3).
inline double hls_threshold_bound(double n_electrons) {
  if (!(n_electrons >= 0.0)) throw DomainError("electron count must be nonnegative");
  const double prefactor = 2.25 * std::sqrt(std::numbers::pi) * std::tgamma(1.0) / std::tgamma(2.5) *
                           std::pow(std::tgamma(3.0) / std::tgamma(1.5), 2.0 / 3.0);
  return prefactor * std::pow(n_electrons, 2.0 / 3.0);
}

/// Second-order coefficient of eta -> E[(1+eta)rho] + E[(1-eta)rho] - 2E[rho]
/// in units of eta^2: 2 J + (4/9) E_xc.
inline double splitting_curvature(const EnergyBreakdown& e) { return 2.0 * e.hartree + (4.0 / 9.0) * e.exchange; }

struct EulerLagrangeReport {
  double residual = 0.0;
  double fermi = 0.0;
  /// Points with zero density, left out of the residual norm.
  std::size_t excluded_points = 0;
  bool warning() const noexcept { return excluded_points > 0; }
};

/// ||h phi - eps phi|| / ||phi|| with h = -Delta/2 - Z/r + v_H + e_xc'(rho) and
/// eps = <phi, h phi> / <phi, phi>, phi = sqrt(rho).
inline EulerLagrangeReport euler_lagrange_residual(const RadialDensity& density, double z, double c_xc,
                                                   TermFlags flags = {}) {
  const RadialFunctional f(density.grid(), z, ExchangeSpec::dirac(c_xc), flags);
  const auto phi = density.amplitude();
  const auto w = f.weights();
  const auto u = f.effective_potential(phi);
  const auto hp = apply_hamiltonian(f, phi, u);
  EulerLagrangeReport out;
  double pp = 0.0;
  double php = 0.0;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    if (phi[i] == 0.0) {
      ++out.excluded_points;
      continue;
    }
    pp += w[i] * phi[i] * phi[i];
    php += w[i] * phi[i] * hp[i];
  }
  if (!(pp > 0.0)) throw DomainError("Euler-Lagrange residual needs a nonzero density");
  out.fermi = php / pp;
  double r = 0.0;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    if (phi[i] == 0.0) continue;
    const double d = hp[i] - out.fermi * phi[i];
    r += w[i] * d * d;
  }
  out.residual = std::sqrt(r / pp);
  return out;
}

/// For rho = alpha |phi|^2 with ||phi|| = 1:
///   E[rho] = alpha (T + V + alpha J[|phi|^2] - c alpha^(1/3) int |phi|^(8/3)).
struct FractionalScales {
  double charge = 1.0;    // multiplies the Hartree term
  double exchange = 1.0;  // multiplies c_xc
};

inline FractionalScales rescale_fractional(double alpha) {
  if (!(alpha > 0.0)) throw DomainError("mass alpha must be positive");
  return {alpha, std::cbrt(alpha)};
}

/// Energy of a unit-mass orbital density under rescaled interactions.
inline EnergyBreakdown normalized_orbital_energy(const RadialDensity& unit_density, double z, double c_xc,
                                                 FractionalScales scales, TermFlags flags = {}) {
  const RadialFunctional f(unit_density.grid(), z, ExchangeSpec::dirac(c_xc * scales.exchange), flags, scales.charge);
  return f.energy(unit_density.amplitude());
}

}  // namespace dissoc
