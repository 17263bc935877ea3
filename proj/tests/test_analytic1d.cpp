#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "dissoc/analytic1d.hpp"
#include "dissoc/model.hpp"

using namespace dissoc;
using namespace dissoc::analytic;

namespace {

// Composite Simpson on [0, L] of f, doubled for the even integrand.
template <class F>
double even_integral(F f, double length = 60.0, int n = 400000) {
  const double h = length / n;
  double s = f(0.0) + f(length);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(i * h);
  return 2.0 * s * h / 3.0;
}

// Direct quadrature of 1/2 int (sqrt(rho)')^2 - rho(0) + (1/2 - c) int rho^2 on the profile.
double functional_on_profile(const SechSolution& s) {
  auto dpsi = [&](double x) {
    const double u = s.b * x + s.x0;
    return -s.a * s.b * std::tanh(u) / std::cosh(u);
  };
  const double kinetic = 0.5 * s.alpha * even_integral([&](double x) { return dpsi(x) * dpsi(x); });
  const double rho2 = even_integral([&](double x) { return s.density(x) * s.density(x); });
  return kinetic - s.density(0.0) + (0.5 - s.c_xc) * rho2;
}

double line_error(double h) {
  const auto s = sech_params(1.0, 1.0);
  const auto g = LineGrid::with_spacing(-40.0, 40.0, h);
  std::vector<double> v(g.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = s.density(g.x(i));
  return std::abs(energy_1d(LineDensity(g, v), {{0.0, 1.0}}, ExchangeSpec::contact(1.0)).total + 19.0 / 24.0);
}

}  // namespace

TEST(SechParams, UnitMassUnitStrength) {
  const auto s = sech_params(1.0, 1.0);
  EXPECT_DOUBLE_EQ(s.b, 1.5);
  EXPECT_DOUBLE_EQ(s.a, 1.5);
  EXPECT_NEAR(s.x0, 0.8047189562170502, 1e-14);
}

TEST(SechParams, TwoElectrons) {
  const auto s = sech_params(2.0, 1.0);
  EXPECT_DOUBLE_EQ(s.b, 2.0);
  EXPECT_NEAR(s.a, std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(s.x0, 0.5493061443340549, 1e-14);
}

TEST(SechParams, DomainErrors) {
  EXPECT_THROW(sech_params(0.0, 1.0), DegenerateLimitError);
  EXPECT_THROW(sech_params(-1.0, 1.0), DomainError);
  EXPECT_THROW(sech_params(1.0, 0.5), DegenerateLimitError);
  try {
    sech_params(1.0, 0.3);
    FAIL();
  } catch (const DegenerateLimitError&) {
    FAIL() << "b < 1 is not the degenerate limit";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("closed form invalid"), std::string::npos);
  }
}

TEST(SechParams, ProfileIsNormalized) {
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> ua(0.05, 2.0), uc(0.55, 2.0);
  for (int k = 0; k < 10; ++k) {
    const auto s = sech_params(ua(rng), uc(rng));
    EXPECT_NEAR(even_integral([&](double x) { return s.psi(x) * s.psi(x); }, 60.0 / s.b * 2.0), 1.0, 1e-8);
  }
}

TEST(AtomEnergyExact, Examples) {
  EXPECT_NEAR(atom_energy_exact(1.0, 1.0), -19.0 / 24.0, 1e-15);
  EXPECT_EQ(atom_energy_exact(0.0, 1.0), 0.0);
  for (double a : {0.1, 0.7, 1.0, 2.0}) EXPECT_NEAR(atom_energy_exact(a, 0.5), -a / 2.0, 1e-15);
  try {
    atom_energy_exact(1.0, 0.3);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("closed form invalid"), std::string::npos);
  }
}

TEST(AtomEnergyExact, MatchesQuadratureOfTheFunctional) {
  std::mt19937 rng(2);
  std::uniform_real_distribution<double> ua(0.1, 2.0), uc(0.55, 2.0);
  for (int k = 0; k < 8; ++k) {
    const double alpha = ua(rng), c = uc(rng);
    EXPECT_NEAR(functional_on_profile(sech_params(alpha, c)), atom_energy_exact(alpha, c), 1e-9)
        << "alpha=" << alpha << " c=" << c;
  }
}

TEST(SplittingSum, Examples) {
  for (int k = 0; k <= 10; ++k) EXPECT_NEAR(splitting_sum_exact(0.1 * k, 0.5), -1.0, 1e-12);
  EXPECT_NEAR(splitting_sum_exact(1.0, 1.0), -19.0 / 12.0, 1e-12);
  EXPECT_NEAR(splitting_sum_exact(0.0, 1.0), -7.0 / 3.0, 1e-12);
  EXPECT_NEAR(splitting_sum_exact(0.0, 1.0), atom_energy_exact(2.0, 1.0), 1e-12);
  EXPECT_THROW(splitting_sum_exact(0.5, 0.4), DomainError);
}

TEST(SplittingSum, EqualsSumOfAtomEnergies) {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> ua(0.0, 1.0), uc(0.5, 2.0);
  for (int k = 0; k < 50; ++k) {
    const double alpha = ua(rng);
    double c = uc(rng);
    if (c == 0.5) c = 0.75;
    EXPECT_LE(std::abs(splitting_sum_exact(alpha, c) - atom_energy_exact(alpha, c) - atom_energy_exact(2.0 - alpha, c)),
              1e-12);
  }
}

TEST(SplittingSum, DownwardParabolaSymmetricAboutOne) {
  for (double c : {0.51, 0.75, 1.0, 1.5, 2.0}) {
    const double d = 0.1;
    for (int k = 1; k < 20; ++k) {
      const double x = 0.1 * k;
      EXPECT_LT(splitting_sum_exact(std::min(2.0, x + d), c) - 2.0 * splitting_sum_exact(x, c) +
                    splitting_sum_exact(x - d, c),
                0.0);
    }
    for (double t = 0.0; t <= 1.0; t += 0.125)
      EXPECT_NEAR(splitting_sum_exact(1.0 + t, c), splitting_sum_exact(1.0 - t, c), 1e-12);
    EXPECT_GT(splitting_sum_exact(1.0, c), splitting_sum_exact(0.99, c));
  }
}

TEST(SplittingArgmin, AlwaysBothElectronsOnOneNucleus) {
  EXPECT_EQ(splitting_argmin_exact(1.0), 0.0);
  EXPECT_EQ(splitting_argmin_exact(0.75), 0.0);
  EXPECT_EQ(splitting_argmin_exact(0.5 + 1e-6), 0.0);
  EXPECT_LT(splitting_sum_polynomial(0.5 + 1e-6).q2, 0.0);
  EXPECT_THROW(splitting_argmin_exact(0.5), DomainError);
  EXPECT_THROW(splitting_argmin_exact(0.2), DomainError);
}

TEST(Discretization, SecondOrderConvergence) {
  const double e1 = line_error(0.02), e2 = line_error(0.01), e3 = line_error(0.005);
  EXPECT_GT(e1 / e2, 3.5);
  EXPECT_LT(e1 / e2, 4.5);
  EXPECT_GT(e2 / e3, 3.5);
  EXPECT_LT(e2 / e3, 4.5);
}
