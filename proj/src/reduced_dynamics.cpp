#include "ptb/reduced_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ptb/errors.hpp"

namespace ptb {
namespace {

using State8 = ode::State<8>;

State8 pack(const ReducedState& s) {
  return {s.ztil.x, s.ztil.y, s.ztil.z, s.ytil.x, s.ytil.y, s.ytil.z,
          s.intF,   s.intG};
}

ReducedState unpack(double lambda_, const State8& y) {
  ReducedState s;
  s.lambda_ = lambda_;
  s.ztil = {y[0], y[1], y[2]};
  s.ytil = {y[3], y[4], y[5]};
  s.intF = y[6];
  s.intG = y[7];
  return s;
}

TrajectorySample make_sample(const ReducedState& s, const MassShell& shell,
                             const PotentialModel& model) {
  const ScalarQuintet q = rest_frame_quintet(s.ztil, s.ytil, shell);
  const PotentialEval e = model.evaluate(q);
  TrajectorySample out;
  out.state = s;
  out.F = 2.0 * q.P2 * e.dP2;
  out.G = 2.0 * q.yP * e.dw;
  out.N = q.ytil2 + 2.0 * e.value;
  out.L2 = angular_momentum_L2(s);
  return out;
}

double relative_change(double v, double v0) {
  const double d = std::abs(v - v0);
  return v0 != 0.0 ? d / std::abs(v0) : d;
}

}  // namespace

ScalarQuintet rest_frame_quintet(const Vec3& ztil, const Vec3& ytil,
                                 const MassShell& shell) {
  ScalarQuintet q;
  q.P2 = shell.M2;
  q.ztil2 = -dot(ztil, ztil);
  q.ytil2 = -dot(ytil, ytil);
  q.zy = -dot(ztil, ytil);
  q.yP = shell.nu;
  q.w = shell.nu * shell.nu / shell.M2;
  return q;
}

RhsValue rhs(const ReducedState& state, const MassShell& shell,
             const PotentialModel& model) {
  const ScalarQuintet q = rest_frame_quintet(state.ztil, state.ytil, shell);
  const PotentialEval e = model.evaluate(q);
  RhsValue r;
  r.dztil = (1.0 + 2.0 * e.dytil2) * state.ytil + e.dzy * state.ztil;
  r.dytil = -2.0 * e.dztil2 * state.ztil - e.dzy * state.ytil;
  r.F = 2.0 * q.P2 * e.dP2;
  r.G = 2.0 * q.yP * e.dw;
  return r;
}

double noether_N(const ReducedState& state, const MassShell& shell,
                 const PotentialModel& model) {
  const ScalarQuintet q = rest_frame_quintet(state.ztil, state.ytil, shell);
  return q.ytil2 + 2.0 * model.evaluate(q).value;
}

double angular_momentum_L2(const ReducedState& state) {
  const double zy = dot(state.ztil, state.ytil);
  return dot(state.ztil, state.ztil) * dot(state.ytil, state.ytil) - zy * zy;
}

double center_time(double lambda_, double intF, double intG,
                   const MassShell& shell) {
  const double M = shell.M;
  const double M3 = M * shell.M2;
  return lambda_ * (0.25 * M - shell.nu * shell.nu / M3) -
         (shell.nu / M3) * intG + intF / M;
}

double center_time_rate(double F, double G, const MassShell& shell) {
  const double M = shell.M;
  const double M3 = M * shell.M2;
  return 0.25 * M - shell.nu * shell.nu / M3 - shell.nu * G / M3 + F / M;
}

void synchronize_sample(TrajectorySample& s, const MassShell& shell) {
  const double lam = s.state.lambda_;
  const double tau_diff = -(2.0 / shell.M2) * (shell.nu * lam + s.state.intG);
  s.tau1 = 0.5 * (lam + tau_diff);
  s.tau2 = 0.5 * (lam - tau_diff);
  s.zdotP = shell.nu * lam + s.state.intG + 0.5 * shell.M2 * tau_diff;
  s.QdotP = 0.5 * shell.nu * tau_diff + 0.25 * shell.M2 * lam + s.state.intF;
  s.T = center_time(lam, s.state.intF, s.state.intG, shell);
  s.dTdlambda = center_time_rate(s.F, s.G, shell);
  s.nonmonotone = !(s.dTdlambda > 0.0);
}

Trajectory synchronize(Trajectory traj) {
  traj.nonmonotone = false;
  for (std::size_t i = 0; i < traj.samples.size(); ++i) {
    auto& s = traj.samples[i];
    synchronize_sample(s, traj.shell);
    if (i > 0 && !(s.T > traj.samples[i - 1].T)) s.nonmonotone = true;
    traj.nonmonotone = traj.nonmonotone || s.nonmonotone;
  }
  traj.synchronized = true;
  return traj;
}

Trajectory integrate(const ReducedState& initial, const MassShell& shell,
                     const PotentialSpec& model, double span,
                     const IntegratorOptions& opts) {
  if (!model) throw Error(ErrorKind::BadParameter, "no potential model");
  if (!(span > 0.0) || !std::isfinite(span)) {
    throw Error(ErrorKind::BadParameter, "lambda span must be positive");
  }
  if (!(opts.tol > 0.0)) {
    throw Error(ErrorKind::BadParameter, "tolerance must be positive");
  }
  const double interval =
      opts.sample_interval > 0.0 ? opts.sample_interval : span / 1000.0;

  const double l0 = initial.lambda_;
  const double l1 = l0 + span;
  std::vector<double> stops;
  const auto n = static_cast<std::size_t>(std::floor(span / interval * (1.0 + 1e-12)));
  stops.reserve(n + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    const double l = l0 + static_cast<double>(i) * interval;
    if (l < l1 - 1e-12 * std::max(1.0, std::abs(l1))) stops.push_back(l);
  }
  stops.push_back(l1);

  Trajectory traj;
  traj.shell = shell;
  traj.model = model;
  const PotentialModel& m = *model;

  auto check = [&](TrajectorySample& s) {
    synchronize_sample(s, shell);
    if (!traj.samples.empty() && !(s.T > traj.samples.back().T)) {
      s.nonmonotone = true;
    }
    if (s.nonmonotone && opts.strict_time) {
      throw Error(ErrorKind::NonMonotoneTime,
                  "dT/dlambda <= 0 at lambda = " + std::to_string(s.state.lambda_));
    }
    traj.nonmonotone = traj.nonmonotone || s.nonmonotone;
  };

  TrajectorySample first = make_sample(initial, shell, m);
  check(first);
  traj.samples.push_back(first);

  auto f = [&](double lam, const State8& y) -> State8 {
    const RhsValue r = rhs(unpack(lam, y), shell, m);
    return {r.dztil.x, r.dztil.y, r.dztil.z, r.dytil.x, r.dytil.y, r.dytil.z,
            r.F,       r.G};
  };
  auto on_stop = [&](double lam, const State8& y) {
    TrajectorySample s = make_sample(unpack(lam, y), shell, m);
    check(s);
    traj.samples.push_back(s);
  };

  ode::Options o;
  o.rtol = opts.tol;
  o.atol = opts.tol;
  o.max_step = opts.max_step;
  traj.stats = ode::dopri45<8>(f, l0, pack(initial), stops, o, on_stop, &traj.dense);
  traj.synchronized = true;
  return traj;
}

TrajectorySample sample_at(const Trajectory& traj, double lambda_) {
  if (traj.dense.empty() || lambda_ < traj.dense.t_begin() ||
      lambda_ > traj.dense.t_end()) {
    throw Error(ErrorKind::OutOfRange, "lambda outside the integrated range");
  }
  TrajectorySample s =
      make_sample(unpack(lambda_, traj.dense.eval(lambda_)), traj.shell, *traj.model);
  synchronize_sample(s, traj.shell);
  return s;
}

double time_at(const Trajectory& traj, double lambda_) {
  const State8 y = traj.dense.eval(lambda_);
  return center_time(lambda_, y[6], y[7], traj.shell);
}

ConservationReport conservation_report(const Trajectory& traj) {
  ConservationReport r;
  if (traj.samples.empty()) return r;
  const auto& s0 = traj.samples.front();
  Vec3 normal = cross(s0.state.ztil, s0.state.ytil);
  const double nn = norm(normal);
  if (nn > 0.0) normal *= 1.0 / nn;
  r.min_dTdlambda = s0.dTdlambda;
  for (const auto& s : traj.samples) {
    r.N_drift = std::max(r.N_drift, relative_change(s.N, s0.N));
    r.L2_drift = std::max(r.L2_drift, relative_change(s.L2, s0.L2));
    if (nn > 0.0) {
      for (const Vec3& v : {s.state.ztil, s.state.ytil}) {
        const double len = norm(v);
        if (len > 0.0) {
          r.planarity = std::max(r.planarity, std::abs(dot(v, normal)) / len);
        }
      }
    }
    r.min_dTdlambda = std::min(r.min_dTdlambda, s.dTdlambda);
  }
  return r;
}

}  // namespace ptb
