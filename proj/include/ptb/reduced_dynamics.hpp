#pragma once

#include <limits>
#include <vector>

#include "ptb/kinematics.hpp"
#include "ptb/mass_shell.hpp"
#include "ptb/minkowski.hpp"
#include "ptb/ode.hpp"
#include "ptb/potential.hpp"

namespace ptb {

/// Relative variables in the rest frame of k = (M, 0, 0, 0): z~ = (0, ztil),
/// y~ = (0, ytil). intF and intG accumulate the two quadratures.
struct ReducedState {
  double lambda_ = 0.0;  // lambda = tau1 + tau2
  Vec3 ztil;
  Vec3 ytil;
  double intF = 0.0;
  double intG = 0.0;
};

struct RhsValue {
  Vec3 dztil;
  Vec3 dytil;
  double F = 0.0;  // {Q.P, V}
  double G = 0.0;  // {z.P, V}
};

struct IntegratorOptions {
  double tol = 1e-10;
  double max_step = std::numeric_limits<double>::infinity();
  double sample_interval = 0.0;  // 0: span / 1000
  bool strict_time = false;
};

/// One emitted point of a trajectory. The fields after G are filled by
/// synchronize().
struct TrajectorySample {
  ReducedState state;
  double F = 0.0;
  double G = 0.0;
  double N = 0.0;
  double L2 = 0.0;
  double zdotP = 0.0;
  double QdotP = 0.0;
  double tau1 = 0.0;
  double tau2 = 0.0;
  double T = 0.0;
  double dTdlambda = 0.0;
  bool nonmonotone = false;  // dT/dlambda <= 0 here, or T failed to increase
};

struct Trajectory {
  MassShell shell;
  PotentialSpec model;
  std::vector<TrajectorySample> samples;
  ode::DenseSolution<8> dense;  // (ztil, ytil, intF, intG) in lambda
  ode::Stats stats;
  bool synchronized = false;
  bool nonmonotone = false;
};

/// Quintet seen from the rest frame: P^2 = M^2, z~^2 = -|ztil|^2,
/// y~^2 = -|ytil|^2, z~.y~ = -ztil.ytil, y.P = nu.
ScalarQuintet rest_frame_quintet(const Vec3& ztil, const Vec3& ytil,
                                 const MassShell& shell);

/// Right-hand side of the reduced system:
///   ztil' = (1 + 2 V_y2) ytil + V_zy ztil
///   ytil' = -2 V_z2 ztil - V_zy ytil
///   F = 2 P^2 V_P2,  G = 2 (y.P) V_w
RhsValue rhs(const ReducedState& state, const MassShell& shell,
             const PotentialModel& model);

/// N = y~^2 + 2V and L^2 at a rest-frame state.
double noether_N(const ReducedState& state, const MassShell& shell,
                 const PotentialModel& model);
double angular_momentum_L2(const ReducedState& state);

/// Adaptive integration over lambda in [initial.lambda_, initial.lambda_ +
/// span], with samples every opts.sample_interval and at the end. The
/// returned trajectory is already synchronized. Throws NonMonotoneTime when
/// opts.strict_time is set and a sample has dT/dlambda <= 0.
Trajectory integrate(const ReducedState& initial, const MassShell& shell,
                     const PotentialSpec& model, double span,
                     const IntegratorOptions& opts = {});

/// Equal-time synchronization of every sample: z.P = 0, tau1 - tau2 =
/// -(2/M^2)(nu lambda + intG), and T(lambda) with all integration constants
/// zero at lambda = 0. Flags samples whose dT/dlambda is not positive.
Trajectory synchronize(Trajectory traj);
void synchronize_sample(TrajectorySample& sample, const MassShell& shell);

/// T(lambda) and dT/dlambda for given quadrature values.
double center_time(double lambda_, double intF, double intG,
                   const MassShell& shell);
double center_time_rate(double F, double G, const MassShell& shell);

/// Synchronized sample anywhere in the integrated range, from dense output.
TrajectorySample sample_at(const Trajectory& traj, double lambda_);

/// T(lambda) from dense output.
double time_at(const Trajectory& traj, double lambda_);

struct ConservationReport {
  double N_drift = 0.0;   // max |N - N0| / |N0|
  double L2_drift = 0.0;  // max |L2 - L2_0| / |L2_0|
  double planarity = 0.0; // max out-of-plane component / |ztil|
  double min_dTdlambda = 0.0;
};

/// Drift of the first integrals over the samples; absolute when the initial
/// value is zero.
ConservationReport conservation_report(const Trajectory& traj);

}  // namespace ptb
