#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "ptb/errors.hpp"
#include "ptb/mass_shell.hpp"

using namespace ptb;

namespace {

struct Admissible {
  double m1, m2, lambda_;
};

// m1 <= m2 and Lambda above the bound -m1^2.
Admissible random_admissible(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.05, 10.0), f(-0.95, 3.0);
  double a = u(rng), b = u(rng);
  if (a > b) std::swap(a, b);
  if (a == b) b *= 1.01;
  return {a, b, f(rng) * a * a};
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::ConfigError;
}

}  // namespace

TEST(MassShell, PlusRootSolvesQuartic) {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 1000; ++i) {
    const auto [m1, m2, lam] = random_admissible(rng);
    const MassShell s = mass_shell_from_lambda(m1, m2, lam);
    EXPECT_LE(std::abs(quartic_residual(s.M2, s.mu, s.nu, lam)), 1e-12 * s.M2 * s.M2);
  }
}

TEST(MassShell, RejectedRootViolatesEnergyPositivity) {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 1000; ++i) {
    const auto [m1, m2, lam] = random_admissible(rng);
    const QuarticRoots r = quartic_roots(m1, m2, lam);
    const double nu = 0.5 * (m1 * m1 - m2 * m2);
    EXPECT_LE(std::abs(quartic_residual(r.minus, 0.5 * (m1 * m1 + m2 * m2), nu, lam)),
              1e-12 * r.plus * r.plus);
    EXPECT_LT(r.minus, 2.0 * std::abs(nu));
    EXPECT_GT(r.plus, 2.0 * std::abs(nu));
    // The lighter body's energy (M^2 + 2 nu) / 2M is negative on the minus root.
    EXPECT_LT(r.minus + 2.0 * nu, 0.0);
  }
}

TEST(MassShell, FreeShellIsSumOfMasses) {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(0.01, 100.0);
  for (int i = 0; i < 100; ++i) {
    double a = u(rng), b = u(rng);
    if (a > b) std::swap(a, b);
    const MassShell s = mass_shell_from_lambda(a, b, 0.0);
    EXPECT_NEAR(s.M, a + b, 1e-12 * (a + b));
    EXPECT_NEAR(s.E1, a, 1e-12 * (a + b));
    EXPECT_NEAR(s.E2, b, 1e-12 * (a + b));
  }
}

TEST(MassShell, EnergiesSumToTotalMass) {
  std::mt19937_64 rng(44);
  for (int i = 0; i < 500; ++i) {
    const auto [m1, m2, lam] = random_admissible(rng);
    const MassShell s = mass_shell_from_lambda(m1, m2, lam);
    EXPECT_NEAR(s.E1 + s.E2, s.M, 1e-12 * s.M);
    EXPECT_NEAR(s.E1 - s.E2, 2.0 * s.nu / s.M, 1e-12 * s.M);
    EXPECT_GT(s.E1, 0.0);
    EXPECT_GT(s.E2, 0.0);
    EXPECT_GT(s.M2, s.m2 * s.m2 - s.m1 * s.m1);
  }
}

TEST(MassShell, KnownValue) {
  // m1 = m2 = 1, Lambda = 1.25: M^2 = 2(1 + 1.25) + 2(2.25) = 9.
  const MassShell s = mass_shell_from_lambda(1.0, 1.0, 1.25);
  EXPECT_DOUBLE_EQ(s.M, 3.0);
  EXPECT_DOUBLE_EQ(s.E1, 1.5);
}

TEST(MassShell, InvariantsRoundTrip) {
  std::mt19937_64 rng(45);
  for (int i = 0; i < 500; ++i) {
    const auto [m1, m2, lam] = random_admissible(rng);
    const MassShell s = mass_shell_from_lambda(m1, m2, lam);
    const MassShell t = mass_shell_from_invariants(s.M2, s.nu, lam);
    EXPECT_NEAR(t.m1, m1, 1e-9 * m2);
    EXPECT_NEAR(t.m2, m2, 1e-9 * m2);
    EXPECT_NEAR(t.E1, s.E1, 1e-12 * s.M);
    EXPECT_NEAR(lambda_from_M2(m1, m2, s.M2), lam, 1e-9 * std::max(m2 * m2, std::abs(lam)));
  }
}

TEST(MassShell, NonRelativisticSlopeIsOne) {
  // (M - m1 - m2) 2 m0 / Lambda - 1 is linear in Lambda.
  const double m1 = 0.7, m2 = 1.9;
  std::vector<double> x, y;
  for (double f : {1e-2, 1e-3, 1e-4, 1e-5}) {
    const double lam = f * m1 * m1;
    x.push_back(std::log(lam));
    y.push_back(std::log(std::abs(nonrel_check(m1, m2, lam) - 1.0)));
  }
  for (std::size_t i = 1; i < x.size(); ++i) {
    EXPECT_NEAR((y[i] - y[i - 1]) / (x[i] - x[i - 1]), 1.0, 0.05);
  }
  EXPECT_EQ(nonrel_check(m1, m2, 0.0), 1.0);
  EXPECT_NEAR(nonrel_check(m1, m2, -1e-9), 1.0, 1e-8);
}

TEST(MassShell, IndividualEnergiesApproachMassesAsLambdaVanishes) {
  const double m1 = 1.0, m2 = 3.0;
  for (double lam : {1e-3, 1e-6, 1e-9}) {
    const auto [d1, d2] = individual_energy_limits(m1, m2, lam);
    EXPECT_GT(d1, 0.0);
    EXPECT_GT(d2, 0.0);
    EXPECT_LT(d1 + d2, lam);
  }
  const auto [z1, z2] = individual_energy_limits(m1, m2, 0.0);
  EXPECT_NEAR(z1, 0.0, 1e-15);
  EXPECT_NEAR(z2, 0.0, 1e-15);
}

TEST(MassShell, Errors) {
  EXPECT_EQ(kind_of([] { mass_shell_from_lambda(1.0, 2.0, -1.0); }),
            ErrorKind::LambdaBoundViolation);
  EXPECT_EQ(kind_of([] { mass_shell_from_lambda(1.0, 2.0, -3.0); }),
            ErrorKind::LambdaBoundViolation);
  EXPECT_EQ(kind_of([] { mass_shell_from_lambda(2.0, 1.0, 0.0); }), ErrorKind::BadParameter);
  EXPECT_EQ(kind_of([] { mass_shell_from_lambda(0.0, 1.0, 0.0); }), ErrorKind::BadParameter);
  EXPECT_EQ(kind_of([] { mass_shell_from_lambda(1.0, 1.0, NAN); }), ErrorKind::BadParameter);
  EXPECT_EQ(kind_of([] { lambda_from_M2(1.0, 2.0, 2.0); }), ErrorKind::EnergyConditionViolation);
  EXPECT_EQ(kind_of([] { mass_shell_from_invariants(1.0, 0.1, 0.0); }), ErrorKind::BadParameter);
  EXPECT_EQ(kind_of([] { mass_shell_from_invariants(1.0, -0.6, 0.0); }),
            ErrorKind::EnergyConditionViolation);
  EXPECT_EQ(kind_of([] { mass_shell_from_invariants(4.0, 0.0, 2.0); }),
            ErrorKind::LambdaBoundViolation);
}

TEST(MassShell, SelfConsistentShellIsAFixedPoint) {
  // Lambda proportional to M, as for the harmonic model.
  for (double c : {0.0, 0.1, 0.5, 2.0, -0.05}) {
    const MassShell s = self_consistent_shell(1.0, 1.5, [c](double M) { return c * M; });
    EXPECT_NEAR(s.lambda_, c * s.M, 1e-11 * s.M);
    EXPECT_NEAR(mass_shell_from_lambda(1.0, 1.5, c * s.M).M, s.M, 1e-12 * s.M * 10);
  }
  const MassShell flat = self_consistent_shell(1.0, 2.0, [](double) { return 0.3; });
  EXPECT_DOUBLE_EQ(flat.M, mass_shell_from_lambda(1.0, 2.0, 0.3).M);
}

TEST(MassShell, SelfConsistentShellReportsInadmissibleOrbits) {
  EXPECT_EQ(kind_of([] { self_consistent_shell(1.0, 1.0, [](double M) { return -5.0 * M; }); }),
            ErrorKind::LambdaBoundViolation);
}
