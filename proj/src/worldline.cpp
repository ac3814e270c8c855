#include "ptb/worldline.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/tools/roots.hpp>

#include "ptb/errors.hpp"

namespace ptb {

WorldlineSample worldline_point(const TrajectorySample& s, const MassShell& shell,
                                const Vec3& Xi0) {
  WorldlineSample w;
  w.lambda_ = s.state.lambda_;
  w.T = s.T;
  w.rtil = s.state.ztil;
  w.Xi = FourVector::from_parts(s.T, Xi0);
  const double ratio = shell.nu / shell.M2;
  const FourVector r = FourVector::from_parts(0.0, s.state.ztil);
  w.x1 = w.Xi - (ratio - 0.5) * r;
  w.x2 = w.Xi - (ratio + 0.5) * r;
  return w;
}

std::vector<WorldlineSample> worldlines(const Trajectory& traj, const Vec3& Xi0) {
  std::vector<WorldlineSample> out;
  out.reserve(traj.samples.size());
  for (const auto& s : traj.samples) out.push_back(worldline_point(s, traj.shell, Xi0));
  return out;
}

double lambda_from_T(const Trajectory& traj, double T_query) {
  if (traj.nonmonotone) {
    throw Error(ErrorKind::NonMonotoneTime,
                "T(lambda) is not monotone on this trajectory");
  }
  const auto& ss = traj.samples;
  if (ss.empty()) throw Error(ErrorKind::OutOfRange, "empty trajectory");
  const double scale = std::max(1.0, std::abs(T_query));
  const double slack = 1e-12 * scale;
  if (T_query < ss.front().T - slack || T_query > ss.back().T + slack) {
    throw Error(ErrorKind::OutOfRange, "T outside the integrated range");
  }
  auto it = std::lower_bound(ss.begin(), ss.end(), T_query,
                             [](const TrajectorySample& s, double t) { return s.T < t; });
  if (it == ss.end()) --it;
  if (it->T == T_query) return it->state.lambda_;
  if (it == ss.begin()) return it->state.lambda_;
  const auto lo = std::prev(it);
  const double l_lo = lo->state.lambda_;
  const double l_hi = it->state.lambda_;
  const double guess =
      l_lo + (T_query - lo->T) / (it->T - lo->T) * (l_hi - l_lo);

  auto f = [&](double lam) {
    const TrajectorySample s = sample_at(traj, lam);
    return std::make_pair(s.T - T_query, s.dTdlambda);
  };
  std::uintmax_t iters = 100;
  double lam = boost::math::tools::newton_raphson_iterate(f, guess, l_lo, l_hi, 50, iters);
  // One more Newton correction to settle the last bits.
  const auto [g, dg] = f(lam);
  if (dg > 0.0) lam = std::clamp(lam - g / dg, l_lo, l_hi);
  return lam;
}

std::vector<TrajectorySample> resample_uniform_T(const Trajectory& traj, double dT) {
  if (!(dT > 0.0)) throw Error(ErrorKind::BadParameter, "dT must be positive");
  if (traj.samples.empty()) return {};
  const double T0 = traj.samples.front().T;
  const double T1 = traj.samples.back().T;
  std::vector<TrajectorySample> out;
  const auto n = static_cast<std::size_t>(std::floor((T1 - T0) / dT * (1.0 + 1e-12)));
  out.reserve(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    const double T = std::min(T0 + static_cast<double>(i) * dT, T1);
    out.push_back(sample_at(traj, lambda_from_T(traj, T)));
  }
  return out;
}

std::vector<WorldlineSample> export_lab_frame(std::vector<WorldlineSample> samples,
                                              const FourVector& k, double M2) {
  const double k2 = lorentz_dot(k, k);
  if (!(std::abs(k2 - M2) <= 1e-9 * std::abs(M2))) {
    throw Error(ErrorKind::FrameMismatch, "k.k must equal the shell's M^2");
  }
  for (auto& s : samples) {
    s.x1 = boost_from_rest(s.x1, k);
    s.x2 = boost_from_rest(s.x2, k);
    s.Xi = boost_from_rest(s.Xi, k);
  }
  return samples;
}

}  // namespace ptb
