#include "ptb/circular.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include <boost/math/tools/roots.hpp>

#include "ptb/errors.hpp"

namespace ptb {
namespace {

// dV/dz~^2 on a circular configuration of radius rho.
double radial_coefficient(const PotentialModel& model, const MassShell& shell,
                          double rho) {
  const Vec3 z{rho, 0.0, 0.0};
  return model.evaluate(rest_frame_quintet(z, Vec3{}, shell)).dztil2;
}

double spread(const std::vector<double>& v, double ref) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  const double d = *hi - *lo;
  if (d == 0.0) return 0.0;
  return ref != 0.0 ? d / std::abs(ref) : d;
}

IntegratorOptions one_period_options(const CircularOrbit& orbit,
                                     const IntegratorOptions& opts) {
  IntegratorOptions o = opts;
  if (!(o.sample_interval > 0.0)) {
    o.sample_interval = 2.0 * std::numbers::pi / orbit.Omega / 256.0;
  }
  return o;
}

}  // namespace

CircularOrbit find_circular(const PotentialSpec& model, const MassShell& shell,
                            double l2) {
  if (!model) throw Error(ErrorKind::BadParameter, "no potential model");
  const PotentialStructure st = model->structure();
  if (!st.central() || !st.zy_independent) {
    throw Error(ErrorKind::NotCentral,
                "circular orbits need {z~, V} = 0 and dV/d(z~.y~) = 0");
  }
  if (!(l2 > 0.0) || !std::isfinite(l2)) {
    throw Error(ErrorKind::BadParameter, "l2 must be positive");
  }

  auto balance = [&](double rho) -> double {
    try {
      const double a = radial_coefficient(*model, shell, rho);
      return 2.0 * a * std::pow(rho, 4) - l2;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DomainError) throw;
      return NAN;
    }
  };

  constexpr int kScan = 480;  // 40 points per decade
  const double lo_exp = -6.0, hi_exp = 6.0;
  std::optional<std::pair<double, double>> bracket;
  double prev_rho = NAN, prev_f = NAN;
  for (int i = 0; i <= kScan && !bracket; ++i) {
    const double rho = std::pow(10.0, lo_exp + (hi_exp - lo_exp) * i / kScan);
    const double f = balance(rho);
    if (std::isfinite(f) && std::isfinite(prev_f)) {
      if (f == 0.0) bracket = {{rho, rho}};
      else if ((f > 0.0) != (prev_f > 0.0)) bracket = {{prev_rho, rho}};
    }
    prev_rho = rho;
    prev_f = f;
  }
  if (!bracket) {
    throw Error(ErrorKind::NoRoot, "no equilibrium radius in [1e-6, 1e6]");
  }
  double rho = bracket->first;
  if (bracket->first != bracket->second) {
    std::uintmax_t iters = 200;
    const auto r = boost::math::tools::toms748_solve(
        balance, bracket->first, bracket->second,
        boost::math::tools::eps_tolerance<double>(52), iters);
    rho = 0.5 * (r.first + r.second);
  }

  const double a = radial_coefficient(*model, shell, rho);
  if (!(a > 0.0)) throw Error(ErrorKind::NoRoot, "equilibrium needs dV/dz~^2 > 0");

  CircularOrbit orbit;
  orbit.rho = rho;
  orbit.speed2 = 2.0 * a * rho * rho;
  orbit.Omega = std::sqrt(2.0 * a);
  orbit.l2 = rho * rho * orbit.speed2;
  orbit.initial.ztil = {rho, 0.0, 0.0};
  orbit.initial.ytil = {0.0, std::sqrt(orbit.speed2), 0.0};

  const ScalarQuintet q =
      rest_frame_quintet(orbit.initial.ztil, orbit.initial.ytil, shell);
  const PotentialEval e = model->evaluate(q);
  if (std::abs(e.dytil2 + 0.5) <= 1e-12) {
    throw Error(ErrorKind::Degenerate,
                "dV/dy~^2 = -1/2 on the candidate orbit; y~^2 is not fixed by N");
  }
  const RhsValue r = rhs(orbit.initial, shell, *model);
  orbit.F = r.F;
  orbit.G = r.G;
  orbit.dTdlambda = center_time_rate(r.F, r.G, shell);
  orbit.period_T = 2.0 * std::numbers::pi / orbit.Omega * orbit.dTdlambda;
  orbit.lambda_ = -(q.ytil2 + 2.0 * e.value);
  return orbit;
}

MassShell shell_for_orbit(const CircularOrbit& orbit, const MassShell& shell) {
  return mass_shell_from_invariants(shell.M2, shell.nu, orbit.lambda_);
}

ConstancyReport verify_constancy(const CircularOrbit& orbit, const PotentialSpec& model,
                         const MassShell& shell, const IntegratorOptions& opts) {
  ConstancyReport rep;
  const double span = 2.0 * std::numbers::pi / orbit.Omega;
  const Trajectory traj =
      integrate(orbit.initial, shell, model, span, one_period_options(orbit, opts));

  std::array<std::vector<double>, 7> series;
  for (const auto& s : traj.samples) {
    const ScalarQuintet q = rest_frame_quintet(s.state.ztil, s.state.ytil, shell);
    const std::array<double, 7> v = {q.P2, q.ztil2, q.ytil2, q.zy, q.w, s.F, s.G};
    for (std::size_t i = 0; i < 7; ++i) series[i].push_back(v[i]);
  }
  const auto& s0 = traj.samples.front();
  const double rho = norm(s0.state.ztil);
  const double speed = norm(s0.state.ytil);
  const std::array<double, 7> refs = {shell.M2,    rho * rho,  speed * speed,
                                      rho * speed, series[4][0], s0.F, s0.G};
  for (std::size_t i = 0; i < 7; ++i) {
    rep.variation[i] = spread(series[i], refs[i]);
    rep.max_variation = std::max(rep.max_variation, rep.variation[i]);
  }
  rep.passed = rep.max_variation <= rep.tolerance;
  return rep;
}

PeriodicityReport verify_periodicity(const CircularOrbit& orbit,
                                     const PotentialSpec& model,
                                     const MassShell& shell,
                                     const IntegratorOptions& opts) {
  PeriodicityReport rep;
  const double span = 2.0 * std::numbers::pi / orbit.Omega;
  const Trajectory traj =
      integrate(orbit.initial, shell, model, span, one_period_options(orbit, opts));
  const auto& first = traj.samples.front();
  const auto& last = traj.samples.back();

  rep.ztil_closure = norm(last.state.ztil - first.state.ztil) / norm(first.state.ztil);
  rep.ytil_closure = norm(last.state.ytil - first.state.ytil) / norm(first.state.ytil);
  rep.T_advance = last.T - first.T;
  rep.period_T_error = std::abs(rep.T_advance - orbit.period_T);

  // Least-squares line T = a + b lambda through all samples.
  double sl = 0, sT = 0, sll = 0, slT = 0;
  const double n = static_cast<double>(traj.samples.size());
  for (const auto& s : traj.samples) {
    sl += s.state.lambda_;
    sT += s.T;
    sll += s.state.lambda_ * s.state.lambda_;
    slT += s.state.lambda_ * s.T;
  }
  const double b = (n * slT - sl * sT) / (n * sll - sl * sl);
  const double a = (sT - b * sl) / n;
  for (const auto& s : traj.samples) {
    rep.linear_fit_residual =
        std::max(rep.linear_fit_residual, std::abs(s.T - (a + b * s.state.lambda_)));
  }

  // Zero crossings of the component along the initial separation; successive
  // crossings are half a period apart.
  const Vec3 axis = first.state.ztil * (1.0 / norm(first.state.ztil));
  auto component = [&](double lam) {
    const auto y = traj.dense.eval(lam);
    return dot(Vec3{y[0], y[1], y[2]}, axis);
  };
  std::vector<double> crossings;
  for (std::size_t i = 1; i < traj.samples.size(); ++i) {
    const double la = traj.samples[i - 1].state.lambda_;
    const double lb = traj.samples[i].state.lambda_;
    const double fa = component(la);
    const double fb = component(lb);
    if (fa == 0.0 || (fa > 0.0) == (fb > 0.0)) continue;
    std::uintmax_t iters = 100;
    const auto r = boost::math::tools::toms748_solve(
        component, la, lb, fa, fb, boost::math::tools::eps_tolerance<double>(50), iters);
    crossings.push_back(0.5 * (r.first + r.second));
  }
  if (crossings.size() >= 2) {
    const double half = crossings[1] - crossings[0];
    rep.omega_observed = std::numbers::pi / half;
    rep.omega_rel_error = std::abs(rep.omega_observed - orbit.Omega) / orbit.Omega;
  } else {
    rep.omega_rel_error = INFINITY;
  }

  rep.passed = rep.ztil_closure <= 1e-8 && rep.ytil_closure <= 1e-8 &&
               rep.period_T_error <= 1e-8 && rep.linear_fit_residual <= 1e-10 &&
               rep.omega_rel_error <= 1e-6;
  return rep;
}

}  // namespace ptb
