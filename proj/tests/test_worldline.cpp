#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ptb/errors.hpp"
#include "ptb/mass_shell.hpp"
#include "ptb/potential.hpp"
#include "ptb/worldline.hpp"
#include "test_support.hpp"

using namespace ptb;

namespace {

Trajectory sample_trajectory() {
  const MassShell shell = mass_shell_from_lambda(0.6, 1.4, 0.3);
  ReducedState s;
  s.ztil = {1.0, 0.0, 0.2};
  s.ytil = {0.0, 0.6, 0.0};
  IntegratorOptions o;
  o.sample_interval = 0.05;
  return integrate(s, shell, make_harmonic(0.1), 15.0, o);
}

}  // namespace

TEST(Worldline, BodiesShareTimeAndSeparationIsZtil) {
  const Trajectory t = sample_trajectory();
  for (const auto& w : worldlines(t, {0.5, -1, 2})) {
    EXPECT_EQ(w.x1.t, w.x2.t);
    EXPECT_EQ(w.Xi.t, w.T);
    const FourVector d = w.x1 - w.x2;
    EXPECT_NEAR(norm(d.spatial() - w.rtil), 0.0, 1e-14);
  }
}

TEST(Worldline, CenterIsEnergyWeightedMean) {
  const Trajectory t = sample_trajectory();
  const MassShell& s = t.shell;
  for (const auto& w : worldlines(t, {0.5, -1, 2})) {
    const FourVector mean = (w.x1 * s.E1 + w.x2 * s.E2) * (1.0 / s.M);
    EXPECT_NEAR(mean.t, w.Xi.t, 1e-12 * std::max(1.0, w.T));
    EXPECT_NEAR(mean.x, w.Xi.x, 1e-12);
    EXPECT_NEAR(mean.y, w.Xi.y, 1e-12);
    EXPECT_NEAR(mean.z, w.Xi.z, 1e-12);
  }
}

TEST(Worldline, LabFrameKeepsEqualTimeAndStraightCenter) {
  const Trajectory t = sample_trajectory();
  const double M = t.shell.M;
  const Vec3 v{0.3, -0.4, 0.5};
  const double g = 1.0 / std::sqrt(1.0 - dot(v, v));
  const FourVector k = FourVector::from_parts(M * g, v * (M * g));
  const auto rest = worldlines(t);
  const auto lab = export_lab_frame(rest, k, t.shell.M2);
  ASSERT_EQ(lab.size(), rest.size());
  for (std::size_t i = 0; i < lab.size(); ++i) {
    const FourVector d = lab[i].x1 - lab[i].x2;
    EXPECT_NEAR(lorentz_dot(k, d), 0.0, 1e-12 * M * 10);
    // Intervals are frame independent.
    const FourVector dr = rest[i].x1 - rest[i].x2;
    EXPECT_NEAR(lorentz_dot(d, d), lorentz_dot(dr, dr), 1e-12 * 10);
    // Xi(T) = T k / M from the origin.
    const FourVector expect = k * (lab[i].T / M);
    EXPECT_NEAR(lab[i].Xi.t, expect.t, 1e-12 * std::max(1.0, expect.t) * 10);
    EXPECT_NEAR(lab[i].Xi.x, expect.x, 1e-12 * std::max(1.0, expect.t) * 10);
  }
}

TEST(Worldline, FrameMismatchIsRejected) {
  const Trajectory t = sample_trajectory();
  try {
    export_lab_frame(worldlines(t), {t.shell.M * 1.01, 0, 0, 0}, t.shell.M2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::FrameMismatch);
  }
}

TEST(Worldline, LambdaFromTInvertsT) {
  const Trajectory t = sample_trajectory();
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> u(0.0, 15.0);
  for (int i = 0; i < 200; ++i) {
    const double lam = u(rng);
    const double T = time_at(t, lam);
    EXPECT_NEAR(lambda_from_T(t, T), lam, 1e-12 * 15);
  }
  for (const auto& s : t.samples) EXPECT_NEAR(lambda_from_T(t, s.T), s.state.lambda_, 1e-13);
  try {
    lambda_from_T(t, t.samples.back().T + 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OutOfRange);
  }
}

TEST(Worldline, LambdaFromTRefusesNonMonotoneTrajectories) {
  const MassShell shell = mass_shell_from_lambda(std::sqrt(3.0), std::sqrt(3.0), 1.0);
  ReducedState s;
  s.ytil = {4, 0, 0};
  const Trajectory t = integrate(s, shell, make_harmonic(0.125), 3.0);
  try {
    lambda_from_T(t, 0.1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonMonotoneTime);
  }
}

TEST(Worldline, UniformTResampling) {
  const Trajectory t = sample_trajectory();
  const double dT = 0.1;
  const auto rows = resample_uniform_T(t, dT);
  ASSERT_GT(rows.size(), 10u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double expect = std::min(t.samples.front().T + dT * i, t.samples.back().T);
    EXPECT_NEAR(rows[i].T, expect, 1e-12);
  }
  EXPECT_THROW(resample_uniform_T(t, 0.0), Error);
}
