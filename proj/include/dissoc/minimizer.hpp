#pragma once

// Mass-constrained minimization of a discrete amplitude functional.
//
// Each step diagonalizes the Hamiltonian frozen at the current iterate
// (tridiagonal, so the lowest eigenvector is cheap), then moves along the
// segment towards that eigenvector and projects back onto the sphere
// sum_i w_i phi_i^2 = mass. The step length is chosen by backtracking on the
// total energy, so the energy never increases.

#include <cmath>
#include <concepts>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dissoc/errors.hpp"
#include "dissoc/functional.hpp"
#include "dissoc/tridiagonal.hpp"

namespace dissoc {

struct SolverConfig {
  double energy_tol = 1e-12;
  double grad_tol = 1e-7;
  int max_iter = 4000;
  /// Initial step along the segment to the frozen-Hamiltonian ground state.
  double step = 1.0;
  /// Functionals with a dense Hessian switch to Newton steps after this many
  /// iterations (slow self-consistent convergence near the binding threshold).
  int newton_after = 25;
  /// Called with (iteration, amplitude) for the initial and every accepted iterate.
  std::function<void(int, std::span<const double>)> observer;

  void validate() const {
    if (!(energy_tol > 0.0) || !(grad_tol > 0.0)) throw DomainError("solver tolerances must be positive");
    if (max_iter < 1) throw DomainError("max_iter must be at least 1");
    if (!(step > 0.0) || step > 1.0) throw DomainError("solver step must lie in (0, 1]");
  }
};

struct MinimizerResult {
  std::vector<double> amplitude;
  EnergyBreakdown energy;
  /// ||H phi - mu phi||_W / ||phi||_W at the returned iterate.
  double residual = 0.0;
  /// Lagrange multiplier mu = <phi, H phi>_W / <phi, phi>_W.
  double fermi = 0.0;
  int iterations = 0;
  double initial_energy = 0.0;
};

namespace detail {

inline double weighted_dot(std::span<const double> w, std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += w[i] * a[i] * b[i];
  return s;
}

inline void rescale_to_mass(std::span<const double> w, std::vector<double>& phi, double mass) {
  const double m = weighted_dot(w, phi, phi);
  if (!(m > 0.0) || !std::isfinite(m)) throw DomainError("cannot normalize a zero or non-finite amplitude");
  const double s = std::sqrt(mass / m);
  for (double& a : phi) a *= s;
}

struct Residual {
  double norm;
  double fermi;
};

template <class Functional>
Residual projected_residual(const Functional& f, std::span<const double> phi, std::span<const double> potential) {
  const auto w = f.weights();
  const auto hp = apply_hamiltonian(f, phi, potential);
  const double pp = weighted_dot(w, phi, phi);
  const double mu = weighted_dot(w, phi, hp) / pp;
  double r = 0.0;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    const double d = hp[i] - mu * phi[i];
    r += w[i] * d * d;
  }
  return {std::sqrt(r / pp), mu};
}

/// Symmetrized Hamiltonian W^-1/2 (L/2 + W U) W^-1/2.
template <class Functional>
SymTridiagonal symmetrized_hamiltonian(const Functional& f, std::span<const double> potential) {
  const auto w = f.weights();
  const auto n = w.size();
  SymTridiagonal t;
  t.d.assign(n, 0.0);
  t.e.assign(n - 1, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double k = 0.5 * f.edge_coupling(i);
    t.d[i] += k;
    t.d[i + 1] += k;
    t.e[i] = -k / std::sqrt(w[i] * w[i + 1]);
  }
  for (std::size_t i = 0; i < n; ++i) t.d[i] = t.d[i] / w[i] + potential[i];
  return t;
}

template <class Functional>
concept HasDenseHessian = requires(const Functional& f, std::span<const double> p) {
  { f.hessian(p) } -> std::convertible_to<Eigen::MatrixXd>;
};

/// Newton step on the sphere sum w phi^2 = const: solves the bordered system
/// [A b; b^T 0] with A = Hess E - 2 mu W and b = W phi, in W^-1/2 scaled
/// variables. Returns nothing if the step is not a descent direction.
template <class Functional>
std::optional<std::vector<double>> newton_direction(const Functional& f, std::span<const double> phi,
                                                    std::span<const double> potential, double mu) {
  const auto w = f.weights();
  const auto n = static_cast<Eigen::Index>(phi.size());
  const auto hp = apply_hamiltonian(f, phi, potential);
  Eigen::VectorXd s(n), g(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    s(i) = 1.0 / std::sqrt(w[ui]);
    g(i) = 2.0 * w[ui] * (hp[ui] - mu * phi[ui]);
  }
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(n + 1, n + 1);
  k.topLeftCorner(n, n) = s.asDiagonal() * f.hessian(phi) * s.asDiagonal();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    k(i, i) -= 2.0 * mu;
    const double b = std::sqrt(w[ui]) * phi[ui];
    k(i, n) = k(n, i) = b;
    rhs(i) = -s(i) * g(i);
  }
  const Eigen::VectorXd y = k.partialPivLu().solve(rhs);
  std::vector<double> delta(phi.size());
  double slope = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    delta[ui] = s(i) * y(i);
    slope += g(i) * delta[ui];
  }
  if (!std::isfinite(slope) || !(slope < 0.0)) return std::nullopt;
  return delta;
}

}  // namespace detail

template <class Functional>
MinimizerResult minimize_amplitude(const Functional& f, std::vector<double> phi, double mass, const SolverConfig& cfg) {
  cfg.validate();
  if (!(mass > 0.0)) throw DomainError("mass must be positive");
  const auto w = f.weights();
  const auto n = w.size();
  if (phi.size() != n) throw DomainError("initial amplitude does not match grid");
  for (double& a : phi) a = std::abs(a);
  detail::rescale_to_mass(w, phi, mass);

  MinimizerResult out;
  out.energy = f.energy(phi);
  out.initial_energy = out.energy.total;
  if (cfg.observer) cfg.observer(0, phi);
  double last_change = std::numeric_limits<double>::infinity();
  double theta = cfg.step;
  std::vector<double> psi(n);

  for (int it = 0;; ++it) {
    const auto u = f.effective_potential(phi);
    const auto res = detail::projected_residual(f, phi, u);
    out.residual = res.norm;
    out.fermi = res.fermi;
    out.iterations = it;
    if (res.norm <= cfg.grad_tol && std::abs(last_change) <= cfg.energy_tol) break;
    if (it >= cfg.max_iter) {
      SolverDiagnostics diag{it, out.energy.total, last_change, res.norm};
      throw SolverFailure("minimizer did not converge within " + std::to_string(cfg.max_iter) +
                              " iterations (residual " + std::to_string(res.norm) + ")",
                          diag, phi);
    }

    if constexpr (detail::HasDenseHessian<Functional>) {
      if (it >= cfg.newton_after) {
        if (auto delta = detail::newton_direction(f, phi, u, res.fermi)) {
          const double slack = 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(out.energy.total));
          std::vector<double> trial(n);
          bool accepted = false;
          for (double t = 1.0; t > 1e-6 && !accepted; t *= 0.5) {
            for (std::size_t i = 0; i < n; ++i) trial[i] = phi[i] + t * (*delta)[i];
            detail::rescale_to_mass(w, trial, mass);
            const auto e = f.energy(trial);
            if (e.total <= out.energy.total + slack) {
              last_change = e.total - out.energy.total;
              phi.swap(trial);
              out.energy = e;
              accepted = true;
              if (cfg.observer) cfg.observer(it + 1, phi);
            }
          }
          if (accepted) continue;
        }
      }
    }

    const auto t = detail::symmetrized_hamiltonian(f, u);
    for (std::size_t i = 0; i < n; ++i) psi[i] = std::sqrt(w[i]) * phi[i];
    auto ground = lowest_eigenpair(t, res.fermi, psi);
    std::vector<double> target(n);
    double overlap = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      target[i] = ground.vector[i] / std::sqrt(w[i]);
      overlap += w[i] * target[i] * phi[i];
    }
    if (overlap < 0.0)
      for (double& a : target) a = -a;
    detail::rescale_to_mass(w, target, mass);

    // Backtracking along the segment; round-off sized increases are accepted
    // so that the iteration can still polish the residual near the minimum.
    const double slack = 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(out.energy.total));
    theta = std::min(1.0, 2.0 * theta);
    std::vector<double> trial(n);
    EnergyBreakdown trial_energy;
    bool accepted = false;
    while (theta > 1e-12) {
      for (std::size_t i = 0; i < n; ++i) trial[i] = (1.0 - theta) * phi[i] + theta * target[i];
      detail::rescale_to_mass(w, trial, mass);
      trial_energy = f.energy(trial);
      if (trial_energy.total <= out.energy.total + slack) {
        accepted = true;
        break;
      }
      theta *= 0.5;
    }
    if (!accepted) {
      if (res.norm <= cfg.grad_tol) break;  // energy is flat to round-off
      SolverDiagnostics diag{it, out.energy.total, last_change, res.norm};
      throw SolverFailure("line search stalled (residual " + std::to_string(res.norm) + ")", diag, phi);
    }
    last_change = trial_energy.total - out.energy.total;
    phi.swap(trial);
    out.energy = trial_energy;
    if (cfg.observer) cfg.observer(it + 1, phi);
  }
  out.amplitude = std::move(phi);
  return out;
}

}  // namespace dissoc
