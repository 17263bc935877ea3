#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "dissoc/solver3d.hpp"

using namespace dissoc;

namespace {

const RadialGrid grid = RadialGrid::for_charge(1.0);
const double ueg = ueg_exchange_strength();

RadialSolution solve(double alpha, double c, TermFlags flags = {}) { return minimize_radial(alpha, 1.0, c, {}, grid, flags); }

template <class Functional>
double worst_gradient_mismatch(const Functional& f, std::vector<double> phi, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto g = energy_gradient(f, phi);
  double worst = 0.0;
  for (int k = 0; k < 5; ++k) {
    std::vector<double> d(phi.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = u(rng) * phi[i];
    const double eps = 1e-4;
    std::vector<double> plus(phi), minus(phi);
    for (std::size_t i = 0; i < d.size(); ++i) {
      plus[i] += eps * d[i];
      minus[i] -= eps * d[i];
    }
    const double fd = (f.energy(plus).total - f.energy(minus).total) / (2.0 * eps);
    double an = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) an += g[i] * d[i];
    worst = std::max(worst, std::abs(fd - an) / std::abs(an));
  }
  return worst;
}

}  // namespace

TEST(Radial, BareHydrogen) {
  const auto s = solve(1.0, 0.0, {false, false});
  EXPECT_NEAR(s.state.energy.total, -0.5, 1e-4);
  EXPECT_NEAR(s.state.fermi, -0.5, 1e-4);
  EXPECT_NEAR(s.state.density.mass(), 1.0, 1e-10);
  EXPECT_FALSE(s.unbound);
}

TEST(Radial, RegressionAtTheElectronGasStrength) {
  const auto coarse = solve(1.0, ueg);
  const auto fine = minimize_radial(1.0, 1.0, ueg, {}, RadialGrid::for_charge(1.0, 1200));
  EXPECT_NEAR(coarse.state.energy.total, fine.state.energy.total, 1e-3);
  EXPECT_NEAR(coarse.state.energy.total, -0.4065342, 1e-6);
  EXPECT_LT(coarse.state.energy.total, 0.0);
}

TEST(Radial, VanishingMass) {
  const auto s = solve(1e-4, ueg);
  EXPECT_LT(s.state.energy.total, 0.0);
  EXPECT_GT(s.state.energy.total, -1e-4);
}

TEST(Radial, MassConservedAtEveryIterate) {
  SolverConfig cfg;
  double worst = 0.0;
  cfg.observer = [&](int, std::span<const double> phi) {
    worst = std::max(worst, std::abs(RadialDensity::from_amplitude(grid, phi).mass() - 1.4));
  };
  minimize_radial(1.4, 1.0, 2.0, cfg, grid);
  EXPECT_LE(worst, 1e-10);
}

TEST(Radial, StrictlyDecreasingNegativeAndStationary) {
  const SolverConfig cfg;
  struct Ladder {
    double c;
    int top;  // last alpha = top / 4
  };
  for (const auto& ladder : {Ladder{ueg, 6}, Ladder{2.0, 8}, Ladder{5.0, 8}}) {
    double previous = 0.0;
    for (int k = 1; k <= ladder.top; ++k) {
      const double alpha = 0.25 * k;
      const auto s = solve(alpha, ladder.c);
      SCOPED_TRACE("c=" + std::to_string(ladder.c) + " alpha=" + std::to_string(alpha));
      EXPECT_FALSE(s.unbound);
      EXPECT_LT(s.state.energy.total, 0.0);
      EXPECT_LT(s.state.energy.total, previous);
      previous = s.state.energy.total;
      const auto el = euler_lagrange_residual(s.state.density, 1.0, ladder.c);
      EXPECT_LE(el.residual, 10.0 * cfg.grad_tol);
      EXPECT_LT(el.fermi, 0.0);
    }
  }
}

TEST(Radial, UnboundAndBeyondExistenceFlags) {
  const auto above = solve(2.0, 0.0);
  EXPECT_TRUE(above.unbound);
  EXPECT_FALSE(above.beyond_existence);
  const auto heavy = solve(2.5, 5.0);
  EXPECT_TRUE(heavy.beyond_existence);
}

TEST(Radial, InputErrors) {
  EXPECT_THROW(solve(0.0, 1.0), DomainError);
  EXPECT_THROW(solve(-1.0, 1.0), DomainError);
  EXPECT_THROW(solve(1.0, -1.0), DomainError);
  EXPECT_THROW(minimize_radial(1.0, 0.0, 1.0, {}, grid), DomainError);
}

TEST(Gradient, MatchesFiniteDifferences) {
  std::mt19937 rng(17);
  std::vector<double> phi(grid.size());
  for (std::size_t i = 0; i < phi.size(); ++i) phi[i] = std::exp(-1.3 * grid.r(i)) * (1.0 + 0.1 * std::sin(grid.r(i)));
  for (double c : {0.0, ueg, 5.0}) {
    const RadialFunctional f(grid, 1.0, ExchangeSpec::dirac(c));
    EXPECT_LE(worst_gradient_mismatch(f, phi, rng), 1e-6) << "c=" << c;
  }
  const auto line = LineGrid::with_spacing(-10.0, 13.0, 0.02);
  std::vector<double> psi(line.size());
  for (std::size_t i = 0; i < psi.size(); ++i) psi[i] = std::exp(-std::abs(line.x(i))) + 0.3 * std::exp(-std::abs(line.x(i) - 3.0));
  const LineFunctional f(line, {{0.0, 1.0}, {3.0, 1.0}}, ExchangeSpec::contact(1.0));
  EXPECT_LE(worst_gradient_mismatch(f, psi, rng), 1e-6);
}

TEST(Gradient, HessianMatchesFiniteDifferencesOfTheGradient) {
  std::vector<double> phi(grid.size());
  for (std::size_t i = 0; i < phi.size(); ++i) phi[i] = std::exp(-grid.r(i));
  const RadialFunctional f(grid, 1.0, ExchangeSpec::dirac(2.0));
  const auto h = f.hessian(phi);
  std::vector<double> d(phi.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = phi[i] * std::cos(3.0 * grid.r(i));
  const double eps = 1e-5;
  std::vector<double> plus(phi), minus(phi);
  for (std::size_t i = 0; i < d.size(); ++i) {
    plus[i] += eps * d[i];
    minus[i] -= eps * d[i];
  }
  const auto gp = energy_gradient(f, plus), gm = energy_gradient(f, minus);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    double hd = 0.0;
    for (std::size_t k = 0; k < d.size(); ++k) hd += h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) * d[k];
    const double fd = (gp[i] - gm[i]) / (2.0 * eps);
    num += (fd - hd) * (fd - hd);
    den += hd * hd;
  }
  EXPECT_LE(std::sqrt(num / den), 1e-5);
}

TEST(EulerLagrange, HydrogenIsAnEigenpair) {
  std::vector<double> rho(grid.size());
  for (std::size_t i = 0; i < rho.size(); ++i) rho[i] = std::exp(-2.0 * grid.r(i)) / std::numbers::pi;
  const auto r = euler_lagrange_residual(RadialDensity(grid, rho), 1.0, 0.0, {false, false});
  EXPECT_NEAR(r.fermi, -0.5, 1e-4);
  EXPECT_FALSE(r.warning());
  // The sampled continuum orbital misses the discrete operator only at the
  // innermost nodes (cusp); the discrete ground state is an eigenpair to round-off.
  EXPECT_LT(r.residual, 0.05);
  const auto solved = solve(1.0, 0.0, {false, false});
  const auto d = euler_lagrange_residual(solved.state.density, 1.0, 0.0, {false, false});
  EXPECT_LT(d.residual, 1e-8);
  EXPECT_NEAR(d.fermi, -0.5, 1e-4);
}

TEST(EulerLagrange, UniformBallIsNotCritical) {
  std::vector<double> rho(grid.size(), 0.0);
  for (std::size_t i = 0; i < rho.size(); ++i)
    if (grid.r(i) < 2.0) rho[i] = 3.0 / (4.0 * std::numbers::pi * 8.0);
  const auto r = euler_lagrange_residual(RadialDensity(grid, rho), 1.0, 0.5);
  EXPECT_GT(r.residual, 1e3 * SolverConfig{}.grad_tol);
  EXPECT_TRUE(r.warning());
  EXPECT_GT(r.excluded_points, 0u);
  EXPECT_THROW(euler_lagrange_residual(RadialDensity(grid, std::vector<double>(grid.size(), 0.0)), 1.0, 0.5),
               DomainError);
}

TEST(Rescaling, Examples) {
  const auto one = rescale_fractional(1.0);
  EXPECT_EQ(one.charge, 1.0);
  EXPECT_EQ(one.exchange, 1.0);
  const auto two = rescale_fractional(2.0);
  EXPECT_EQ(two.charge, 2.0);
  EXPECT_NEAR(two.exchange, std::cbrt(2.0), 1e-15);
  EXPECT_THROW(rescale_fractional(0.0), DomainError);
}

TEST(Rescaling, NormalizedOrbitalIdentity) {
  const auto unit = solve(1.0, ueg).state.density;
  for (double alpha : {0.3, 1.0, 1.7, 2.0}) {
    const auto direct = energy_3d(unit.scaled(alpha), 1.0, ExchangeSpec::dirac(ueg));
    const auto rescaled = normalized_orbital_energy(unit, 1.0, ueg, rescale_fractional(alpha));
    EXPECT_NEAR(direct.total, alpha * rescaled.total, 1e-12 * (1.0 + std::abs(direct.total)));
  }
}

TEST(Hls, BoundValues) {
  EXPECT_NEAR(hls_threshold_bound(1.0), 5.1615, 5e-4);
  EXPECT_NEAR(hls_threshold_bound(8.0), 4.0 * hls_threshold_bound(1.0), 1e-12);
  EXPECT_NEAR(hls_threshold_bound(8.0), 20.646, 2e-3);
  EXPECT_EQ(hls_threshold_bound(0.0), 0.0);
  EXPECT_THROW(hls_threshold_bound(-1.0), DomainError);
}

TEST(Taylor, SecondOrderCoefficientChangesSign) {
  EXPECT_GT(splitting_curvature(solve(1.0, ueg).state.energy), 0.0);
  EXPECT_LT(splitting_curvature(solve(1.0, 6.0).state.energy), 0.0);
}

TEST(Scan, ElectronGasStrengthIsSymmetric) {
  const auto scan = splitting_scan_3d(1.0, ueg, 0.05, {}, grid);
  ASSERT_EQ(scan.samples.size(), 21u);
  EXPECT_NEAR(scan.argmin_alpha, 1.0, 1e-12);
  EXPECT_TRUE(scan.symmetric);
  for (const auto& s : scan.samples) EXPECT_EQ(s.sum, s.energy + s.complement_energy);
  EXPECT_EQ(scan.samples.front().energy, 0.0);
  EXPECT_EQ(scan.samples.back().energy, scan.samples.back().complement_energy);
}

TEST(Scan, NoExchangeIsSymmetric) { EXPECT_TRUE(splitting_scan_3d(1.0, 0.0, 0.05, {}, grid).symmetric); }

TEST(Scan, StrongExchangeBreaksSymmetry) {
  const auto scan = splitting_scan_3d(1.0, 5.0, 0.05, {}, grid);
  EXPECT_FALSE(scan.symmetric);
  EXPECT_NE(scan.argmin_alpha, 1.0);
}

TEST(Scan, ParallelMatchesSerial) {
  const auto a = splitting_scan_3d(1.0, 2.0, 0.25, {}, grid, 1);
  const auto b = splitting_scan_3d(1.0, 2.0, 0.25, {}, grid, 3);
  ASSERT_EQ(a.samples.size(), b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) EXPECT_EQ(a.samples[i].sum, b.samples[i].sum);
}

TEST(Scan, OneDimensionalConcaveCase) {
  const auto scan = splitting_scan_1d(1.0, 1.0, 0.25, {});
  ASSERT_EQ(scan.samples.size(), 5u);
  EXPECT_EQ(scan.argmin_alpha, 0.0);
  EXPECT_FALSE(scan.symmetric);
  EXPECT_NEAR(scan.samples.front().sum, -7.0 / 3.0, 1e-3);
}

TEST(Scan, TiesGoToTheSmallerAlphaAndStepMustDivide) {
  const auto scan = assemble_scan(2.0, 1.0, 0.5, {0.0, -1.0, -1.0, -1.0, -1.0});
  EXPECT_EQ(scan.argmin_alpha, 0.5);
  EXPECT_TRUE(scan.symmetric);
  const auto flat = assemble_scan(2.0, 1.0, 0.5, {0.0, -0.5, -1.0, -1.5, -2.0});
  EXPECT_EQ(flat.argmin_alpha, 0.0);
  EXPECT_FALSE(flat.symmetric);
  EXPECT_THROW(splitting_scan_3d(1.0, 1.0, 0.3, {}, grid), DomainError);
  EXPECT_THROW(splitting_scan_3d(0.0, 1.0, 0.1, {}, grid), DomainError);
}

TEST(Threshold, IntervalMustBracket) {
  try {
    symmetry_threshold(1.0, 0.0, ueg, 0.1, 0.05, {}, grid);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("both endpoints symmetric"), std::string::npos);
  }
  ASSERT_FALSE(splitting_scan_3d(1.0, 6.0, 0.05, {}, grid).symmetric);
  try {
    symmetry_threshold(1.0, 5.0, 6.0, 0.1, 0.05, {}, grid);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("both endpoints asymmetric"), std::string::npos);
  }
  EXPECT_THROW(symmetry_threshold(1.0, 2.0, 1.0, 0.1, 0.05, {}, grid), DomainError);
}

TEST(Threshold, Bisection) {
  const auto b = symmetry_threshold(1.0, 4.0, 5.0, 0.3, 0.05, {}, grid);
  EXPECT_LE(b.c_high - b.c_low, 0.3);
  EXPECT_GE(b.c_low, 4.0);
  EXPECT_LE(b.c_high, 5.0);
  ASSERT_EQ(b.probes.size(), 4u);
  EXPECT_TRUE(b.probes[0].symmetric);
  EXPECT_FALSE(b.probes[1].symmetric);
}

TEST(Parallel, OrderAndErrors) {
  const auto v = parallel_map(50, 4, [](std::size_t i) { return static_cast<int>(i * i); });
  for (std::size_t i = 0; i < v.size(); ++i) EXPECT_EQ(v[i], static_cast<int>(i * i));
  try {
    parallel_map(20, 3, [](std::size_t i) -> int {
      if (i == 7 || i == 13) throw std::runtime_error("bad " + std::to_string(i));
      return 0;
    });
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "bad 7");
  }
}
