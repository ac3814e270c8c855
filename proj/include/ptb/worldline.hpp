#pragma once

#include <vector>

#include "ptb/minkowski.hpp"
#include "ptb/reduced_dynamics.hpp"

namespace ptb {

/// Both bodies and the center of energy on one equal-time slice.
struct WorldlineSample {
  double lambda_ = 0.0;
  double T = 0.0;
  FourVector x1, x2, Xi;
  Vec3 rtil;  // relative separation in the rest frame
};

/// x1 = Xi - (nu/M^2 - 1/2) r,  x2 = Xi - (nu/M^2 + 1/2) r,  Xi = (T, Xi0),
/// all in the rest frame of k.
WorldlineSample worldline_point(const TrajectorySample& s, const MassShell& shell,
                                const Vec3& Xi0 = {});

std::vector<WorldlineSample> worldlines(const Trajectory& traj, const Vec3& Xi0 = {});

/// Inverts T(lambda) on the dense output. Throws NonMonotoneTime for a
/// flagged trajectory and OutOfRange outside the sampled T range.
double lambda_from_T(const Trajectory& traj, double T_query);

/// Synchronized samples at T = T(start) + i dT up to the last sample.
std::vector<TrajectorySample> resample_uniform_T(const Trajectory& traj, double dT);

/// Boosts every four-point from the rest frame to the frame where the total
/// momentum is k. Throws FrameMismatch unless k.k = M2 to 1e-9 relative.
std::vector<WorldlineSample> export_lab_frame(std::vector<WorldlineSample> samples,
                                              const FourVector& k, double M2);

}  // namespace ptb
