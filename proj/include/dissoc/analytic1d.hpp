#pragma once

// Closed-form ground state of the 1D contact-interaction atom.
//
// For c_xc > 1/2 the minimizer of mass alpha is rho = alpha psi^2 with
// psi(x) = a sech(b|x| + x0), b = 1 + alpha (c_xc - 1/2),
// a = sqrt(b^2 / (2 (b - 1))), x0 = artanh(1/b).

#include <cmath>
#include <limits>

#include "dissoc/errors.hpp"

namespace dissoc::analytic {

struct SechSolution {
  double alpha = 0.0;
  double c_xc = 0.0;
  double a = 0.0;
  double b = 0.0;
  double x0 = 0.0;

  double psi(double x) const { return a / std::cosh(b * std::abs(x) + x0); }
  double density(double x) const {
    const double p = psi(x);
    return alpha * p * p;
  }
};

namespace detail {

inline double artanh(double t) { return 0.5 * std::log((1.0 + t) / (1.0 - t)); }

inline double sech_b(double alpha, double c_xc) { return 1.0 - alpha * (1.0 - 2.0 * c_xc) / 2.0; }

inline void require_closed_form_domain(double alpha, double c_xc) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw DomainError("mass alpha must be finite and nonnegative");
  if (!(c_xc >= 0.5) || !std::isfinite(c_xc))
    throw DomainError("closed form invalid for c_xc < 1/2; use grid solver");
}

}  // namespace detail

inline SechSolution sech_params(double alpha, double c_xc) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw DomainError("mass alpha must be finite and nonnegative");
  if (!std::isfinite(c_xc)) throw DomainError("c_xc must be finite");
  const double b = detail::sech_b(alpha, c_xc);
  if (b == 1.0) throw DegenerateLimitError("closed form degenerates at b = 1 (linear limit); use atom_energy_exact");
  if (!(b > 1.0)) throw DomainError("closed form invalid (b < 1); use grid solver");
  return {alpha, c_xc, std::sqrt(b * b / (2.0 * (b - 1.0))), b, detail::artanh(1.0 / b)};
}

/// I_alpha = alpha (b^2+b+1)/6 - alpha (b+1)/2 + (1/2 - c) alpha^2 (2b+1)/6.
inline double atom_energy_exact(double alpha, double c_xc) {
  detail::require_closed_form_domain(alpha, c_xc);
  if (alpha == 0.0) return 0.0;
  const double b = detail::sech_b(alpha, c_xc);
  const double kinetic = alpha * (b * b + b + 1.0) / 6.0;
  const double external = -alpha * (b + 1.0) / 2.0;
  const double interaction = (0.5 - c_xc) * alpha * alpha * (2.0 * b + 1.0) / 6.0;
  return kinetic + external + interaction;
}

/// Coefficients of I_alpha + I_{2-alpha} = q2 alpha^2 + q1 alpha + q0.
struct Quadratic {
  double q2, q1, q0;
  double operator()(double x) const { return (q2 * x + q1) * x + q0; }
};

inline Quadratic splitting_sum_polynomial(double c_xc) {
  const double c2 = c_xc * c_xc;
  return {(3.0 - 12.0 * c2) / 12.0, 6.0 * (4.0 * c2 - 1.0) / 12.0, -4.0 * (1.0 + 2.0 * c_xc + 4.0 * c2) / 12.0};
}

inline double splitting_sum_exact(double alpha, double c_xc) {
  detail::require_closed_form_domain(alpha, c_xc);
  if (alpha > 2.0) throw DomainError("splitting mass alpha must lie in [0, 2]");
  return splitting_sum_polynomial(c_xc)(alpha);
}

/// Minimizer of alpha -> I_alpha + I_{2-alpha} over [0, 1]. The sum is a
/// concave parabola for c_xc > 1/2, so the minimum sits at an end point;
/// ties go to the smaller alpha.
inline double splitting_argmin_exact(double c_xc) {
  if (!(c_xc > 0.5) || !std::isfinite(c_xc))
    throw DomainError("splitting argmin requires c_xc > 1/2 (flat or convex sum otherwise)");
  const auto sum = splitting_sum_polynomial(c_xc);
  return sum(0.0) <= sum(1.0) ? 0.0 : 1.0;
}

}  // namespace dissoc::analytic
