#pragma once

// Two electrons on the line with contact wells at 0 and R and contact
// repulsion:
//   H = sum_{z in {x, y}} (-1/2 d^2/dz^2 - delta_0(z) - delta_R(z)) + delta(x - y).
// The spatial ground state is symmetric under x <-> y (the spin singlet).
// Each delta becomes 1/h at its grid point (or on the diagonal for the
// interaction); Dirichlet conditions at the box edge.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "dissoc/errors.hpp"
#include "dissoc/grid.hpp"

namespace dissoc {

struct TwoParticleOptions {
  double tol = 1e-10;            // relative change of the eigenvalue between iterations
  double shift = -4.5;           // below the spectrum: H >= -4 on any grid
  int max_iter = 2000;
  double cg_tol = 1e-11;
  double boundary_limit = 1e-3;  // max |psi| on the box edge relative to max |psi|
  bool estimate_error = true;    // second solve at spacing 2h
};

struct TwoParticleResult {
  double energy = 0.0;
  /// Two-grid (GCI, safety factor 1.25) estimate of |E_h - E|; 0 when not estimated.
  double discretization_error = 0.0;
  /// Richardson value E_h + (E_h - E_2h)/3.
  double extrapolated = 0.0;
  double coarse_energy = 0.0;
  int iterations = 0;
  std::size_t axis_points = 0;
  /// Normalized fine-grid eigenvector, psi(x_i, x_j) at index i * axis_points + j.
  std::vector<double> wavefunction;
};

/// Axis for the tensor grid: [-margin, R + margin] with both wells on nodes.
inline LineGrid two_particle_axis(double distance, double spacing = 1.0 / 6.0, double margin = 10.0) {
  if (!(distance >= 0.0)) throw DomainError("internuclear distance must be nonnegative");
  if (!(spacing > 0.0) || !(margin > 0.0)) throw DomainError("spacing and margin must be positive");
  const auto left = static_cast<std::size_t>(std::llround(margin / spacing));
  const auto mid = static_cast<std::size_t>(std::llround(distance / spacing));
  const double x_min = -spacing * static_cast<double>(left);
  return LineGrid(x_min, x_min + spacing * static_cast<double>(2 * left + mid), 2 * left + mid + 1);
}

namespace detail {

class TwoParticleOperator {
public:
  TwoParticleOperator(const LineGrid& axis, double distance)
      : m_(axis.size()), h_(axis.spacing()), one_body_(axis.size(), 0.0) {
    one_body_[axis.nearest_index(0.0)] -= 1.0 / h_;
    one_body_[axis.nearest_index(distance)] -= 1.0 / h_;
  }

  std::size_t axis_size() const noexcept { return m_; }
  std::size_t size() const noexcept { return m_ * m_; }

  /// out = (H - shift) in
  void apply(const std::vector<double>& in, std::vector<double>& out, double shift) const {
    const double kin = 0.5 / (h_ * h_);
    const double diag_interaction = 1.0 / h_;
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < m_; ++j) {
        const std::size_t k = i * m_ + j;
        double lap = 4.0 * in[k];
        if (i > 0) lap -= in[k - m_];
        if (i + 1 < m_) lap -= in[k + m_];
        if (j > 0) lap -= in[k - 1];
        if (j + 1 < m_) lap -= in[k + 1];
        double v = one_body_[i] + one_body_[j] - shift;
        if (i == j) v += diag_interaction;
        out[k] = kin * lap + v * in[k];
      }
    }
  }

private:
  std::size_t m_;
  double h_;
  std::vector<double> one_body_;
};

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Conjugate gradients for (H - shift) x = b, warm-started from x.
inline void conjugate_gradient(const TwoParticleOperator& op, double shift, const std::vector<double>& b,
                               std::vector<double>& x, double tol) {
  const auto n = b.size();
  std::vector<double> r(n), p(n), ap(n);
  op.apply(x, ap, shift);
  for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - ap[i];
  p = r;
  double rr = dot(r, r);
  const double target = tol * tol * dot(b, b);
  for (std::size_t it = 0; it < 10 * n && rr > target; ++it) {
    op.apply(p, ap, shift);
    const double alpha = rr / dot(p, ap);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * ap[i];
    }
    const double rr_new = dot(r, r);
    const double beta = rr_new / rr;
    rr = rr_new;
    for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
  }
}

struct EigenSolve {
  double energy;
  int iterations;
  std::vector<double> vector;
};

inline EigenSolve two_particle_inverse_iteration(const LineGrid& axis, double distance, const TwoParticleOptions& opt) {
  const TwoParticleOperator op(axis, distance);
  const auto m = op.axis_size();
  const double right = axis.x(axis.nearest_index(distance));

  // Symmetrized product of single-well ground states.
  std::vector<double> x(op.size());
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const double xi = axis.x(i), yj = axis.x(j);
      x[i * m + j] = std::exp(-std::abs(xi) - std::abs(yj - right)) + std::exp(-std::abs(xi - right) - std::abs(yj));
    }
  auto normalize = [](std::vector<double>& v) {
    const double s = std::sqrt(dot(v, v));
    for (double& a : v) a /= s;
  };
  normalize(x);

  std::vector<double> hx(op.size()), y(op.size());
  op.apply(x, hx, 0.0);
  double energy = dot(x, hx);
  for (int it = 1; it <= opt.max_iter; ++it) {
    y = x;
    conjugate_gradient(op, opt.shift, x, y, opt.cg_tol);
    normalize(y);
    x.swap(y);
    op.apply(x, hx, 0.0);
    const double next = dot(x, hx);
    const double change = std::abs(next - energy);
    energy = next;
    if (change <= opt.tol * std::abs(energy)) {
      double peak = 0.0, edge = 0.0;
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
          const double a = std::abs(x[i * m + j]);
          peak = std::max(peak, a);
          if (i == 0 || j == 0 || i + 1 == m || j + 1 == m) edge = std::max(edge, a);
        }
      if (edge > opt.boundary_limit * peak)
        throw GridTooSmallError("two-particle grid too small: edge amplitude ratio " + std::to_string(edge / peak));
      return {energy, it, std::move(x)};
    }
  }
  throw SolverFailure("two-particle inverse iteration did not converge", {opt.max_iter, energy, 0.0, 0.0});
}

}  // namespace detail

/// Lowest eigenvalue of the discrete two-particle Hamiltonian on axis x axis.
inline TwoParticleResult two_particle_ground(double distance, const LineGrid& axis, const TwoParticleOptions& opt = {}) {
  if (!(distance >= 0.0)) throw DomainError("internuclear distance must be nonnegative");
  if (!axis.contains(0.0) || !axis.contains(distance)) throw DomainError("both wells must lie inside the grid");
  if (!(opt.tol > 0.0)) throw DomainError("tolerance must be positive");

  TwoParticleResult out;
  auto fine = detail::two_particle_inverse_iteration(axis, distance, opt);
  out.energy = fine.energy;
  out.extrapolated = fine.energy;
  out.iterations = fine.iterations;
  out.axis_points = axis.size();
  out.wavefunction = std::move(fine.vector);
  if (opt.estimate_error) {
    const auto coarse_axis = LineGrid::with_spacing(axis.x_min(), axis.x_max(), 2.0 * axis.spacing());
    const auto coarse = detail::two_particle_inverse_iteration(coarse_axis, distance, opt);
    out.coarse_energy = coarse.energy;
    const double diff = fine.energy - coarse.energy;
    out.extrapolated = fine.energy + diff / 3.0;
    out.discretization_error = 1.25 * std::abs(diff) / 3.0;
  }
  return out;
}

}  // namespace dissoc
