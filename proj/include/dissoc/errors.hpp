#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace dissoc {

/// Input outside the domain of an operation (bad parameters, invalid closed form, ...).
class DomainError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// The closed-form sech profile degenerates at b = 1 (a and x0 diverge).
class DegenerateLimitError : public DomainError {
public:
  using DomainError::DomainError;
};

/// Raised when the grid is too small to hold the converged density.
class GridTooSmallError : public DomainError {
public:
  using DomainError::DomainError;
};

/// Diagnostics attached to a failed iterative solve.
struct SolverDiagnostics {
  int iterations = 0;
  double energy = 0.0;
  double energy_change = 0.0;
  double residual = 0.0;
};

/// An iterative solver did not reach its tolerances. Carries the last iterate.
class SolverFailure : public std::runtime_error {
public:
  SolverFailure(const std::string& what, SolverDiagnostics diag, std::vector<double> last_iterate = {})
      : std::runtime_error(what), diagnostics_(diag), last_iterate_(std::move(last_iterate)) {}

  const SolverDiagnostics& diagnostics() const noexcept { return diagnostics_; }
  /// Last orbital (square root of the density) visited by the solver.
  const std::vector<double>& last_iterate() const noexcept { return last_iterate_; }

private:
  SolverDiagnostics diagnostics_;
  std::vector<double> last_iterate_;
};

}  // namespace dissoc
