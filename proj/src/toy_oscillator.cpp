#include "ptb/toy_oscillator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ptb/errors.hpp"
#include "ptb/potential.hpp"

namespace ptb {

double ToyParams::omega() const { return std::sqrt(2.0 * chi * M); }

double ToyParams::lambda_() const { return 2.0 * chi * M * (a() + b()); }

void validate(const ToyParams& p) {
  if (!(p.chi > 0.0) || !(p.M > 0.0)) {
    throw Error(ErrorKind::BadParameter, "toy model needs chi > 0 and M > 0");
  }
  if (p.nu > 0.0) throw Error(ErrorKind::BadParameter, "nu must be <= 0");
  if (std::abs(dot(p.A, p.B)) > 1e-12 * std::max(1.0, norm(p.A) * norm(p.B))) {
    throw Error(ErrorKind::BadParameter, "half-axes A and B must be orthogonal");
  }
}

std::pair<ToyParams, MassShell> toy_params_from_masses(double m1, double m2,
                                                       double chi, const Vec3& A,
                                                       const Vec3& B, double C) {
  ToyParams p;
  p.chi = chi;
  p.A = A;
  p.B = B;
  p.C = C;
  p.M = 1.0;
  validate(p);
  const double axes = p.a() + p.b();
  const MassShell shell = self_consistent_shell(
      m1, m2, [&](double M) { return 2.0 * chi * M * axes; });
  p.M = shell.M;
  p.nu = shell.nu;
  return {p, shell};
}

MassShell toy_shell(const ToyParams& p) {
  validate(p);
  return mass_shell_from_invariants(p.M * p.M, p.nu, p.lambda_());
}

ReducedState toy_initial_state(const ToyParams& p) {
  const auto [z, y] = analytic_state(p, 0.0);
  ReducedState s;
  s.ztil = z;
  s.ytil = y;
  return s;
}

std::pair<Vec3, Vec3> analytic_state(const ToyParams& p, double lambda_) {
  const double W = p.omega();
  const double ph = W * lambda_ + p.C;
  const double s = std::sin(ph), c = std::cos(ph);
  return {p.A * s + p.B * c, W * (p.A * c - p.B * s)};
}

double F_analytic(const ToyParams& p, double lambda_) {
  const double ph = p.omega() * lambda_ + p.C;
  const double s = std::sin(ph), c = std::cos(ph);
  return -p.chi * p.M * (p.a() * s * s + p.b() * c * c);
}

double analytic_intF(const ToyParams& p, double lambda_) {
  const double W = p.omega();
  const double a = p.a(), b = p.b();
  auto primitive = [&](double l) {
    return 0.5 * (a + b) * l + (b - a) / (4.0 * W) * std::sin(2.0 * W * l + 2.0 * p.C);
  };
  return -p.chi * p.M * (primitive(lambda_) - primitive(0.0));
}

double analytic_T(const ToyParams& p, double lambda_) {
  const double M3 = p.M * p.M * p.M;
  return lambda_ * (0.25 * p.M - p.nu * p.nu / M3) + analytic_intF(p, lambda_) / p.M;
}

ToyComparison compare_with_integration(const ToyParams& p, double periods,
                                       const IntegratorOptions& opts) {
  validate(p);
  const MassShell shell = toy_shell(p);
  const double span = periods * 2.0 * std::numbers::pi / p.omega();
  IntegratorOptions o = opts;
  if (!(o.sample_interval > 0.0)) o.sample_interval = span / (200.0 * periods);
  const Trajectory traj =
      integrate(toy_initial_state(p), shell, make_harmonic(p.chi), span, o);

  ToyComparison c;
  c.accepted_steps = traj.stats.accepted;
  c.min_dTdlambda = traj.samples.front().dTdlambda;
  for (const auto& s : traj.samples) {
    const double lam = s.state.lambda_;
    const auto [z, y] = analytic_state(p, lam);
    c.max_ztil_dev = std::max(c.max_ztil_dev, norm(s.state.ztil - z));
    c.max_ytil_dev = std::max(c.max_ytil_dev, norm(s.state.ytil - y));
    c.max_intF_dev = std::max(c.max_intF_dev, std::abs(s.state.intF - analytic_intF(p, lam)));
    c.max_T_dev = std::max(c.max_T_dev, std::abs(s.T - analytic_T(p, lam)));
    c.min_dTdlambda = std::min(c.min_dTdlambda, s.dTdlambda);
  }
  c.max_deviation =
      std::max({c.max_ztil_dev, c.max_ytil_dev, c.max_intF_dev, c.max_T_dev});
  return c;
}

}  // namespace ptb
