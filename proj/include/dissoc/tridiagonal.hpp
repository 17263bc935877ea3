#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "dissoc/errors.hpp"

namespace dissoc {

/// Symmetric tridiagonal matrix: diagonal d (n), off-diagonal e (n - 1).
struct SymTridiagonal {
  std::vector<double> d;
  std::vector<double> e;

  std::size_t size() const noexcept { return d.size(); }

  /// Number of eigenvalues strictly below sigma (Sturm sequence of LDL^T pivots).
  std::size_t count_below(double sigma) const {
    constexpr double tiny = std::numeric_limits<double>::min();
    std::size_t count = 0;
    double q = d[0] - sigma;
    if (q == 0.0) q = -tiny;
    if (q < 0.0) ++count;
    for (std::size_t i = 1; i < d.size(); ++i) {
      q = d[i] - sigma - e[i - 1] * e[i - 1] / q;
      if (q == 0.0) q = -tiny;
      if (q < 0.0) ++count;
    }
    return count;
  }

  std::pair<double, double> gershgorin() const {
    double lo = std::numeric_limits<double>::max();
    double hi = std::numeric_limits<double>::lowest();
    for (std::size_t i = 0; i < d.size(); ++i) {
      double r = 0.0;
      if (i > 0) r += std::abs(e[i - 1]);
      if (i + 1 < d.size()) r += std::abs(e[i]);
      lo = std::min(lo, d[i] - r);
      hi = std::max(hi, d[i] + r);
    }
    return {lo, hi};
  }

  /// Solves (T - sigma) x = b in place for T - sigma positive definite.
  void solve_shifted(double sigma, std::span<double> b) const {
    const auto n = d.size();
    std::vector<double> piv(n);
    piv[0] = d[0] - sigma;
    for (std::size_t i = 1; i < n; ++i) {
      const double l = e[i - 1] / piv[i - 1];
      piv[i] = d[i] - sigma - l * e[i - 1];
      b[i] -= l * b[i - 1];
    }
    b[n - 1] /= piv[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) b[i] = (b[i] - e[i] * b[i + 1]) / piv[i];
  }
};

struct Eigenpair {
  double value = 0.0;
  std::vector<double> vector;
};

/// Lowest eigenpair of T. `upper` must bound the lowest eigenvalue from above
/// (e.g. a Rayleigh quotient); `guess` seeds the inverse iteration.
inline Eigenpair lowest_eigenpair(const SymTridiagonal& t, double upper, std::span<const double> guess) {
  auto [lo, hi] = t.gershgorin();
  hi = std::min(hi, upper + 1e-12 * std::max(1.0, std::abs(upper)));
  if (t.count_below(hi) == 0) hi = t.gershgorin().second;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (t.count_below(mid) >= 1)
      hi = mid;
    else
      lo = mid;
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(lo))) break;
  }
  // lo is now a sharp lower bound, so T - sigma is positive definite below it.
  const double sigma = lo - 1e-10 * std::max(1.0, std::abs(lo));
  std::vector<double> x(guess.begin(), guess.end());
  if (x.size() != t.size()) x.assign(t.size(), 1.0);
  auto normalize = [](std::vector<double>& v) {
    double s = 0.0;
    for (double a : v) s += a * a;
    s = std::sqrt(s);
    if (!(s > 0.0) || !std::isfinite(s)) throw SolverFailure("inverse iteration broke down", {});
    for (double& a : v) a /= s;
  };
  normalize(x);
  for (int it = 0; it < 3; ++it) {
    t.solve_shifted(sigma, x);
    normalize(x);
  }
  return {0.5 * (lo + hi), std::move(x)};
}

}  // namespace dissoc
