#pragma once

// Dormand-Prince 5(4) with PI step-size control and the standard fourth-order
// continuous extension (Hairer, Norsett & Wanner, DOPRI5).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "ptb/errors.hpp"

namespace ptb::ode {

template <std::size_t N>
using State = std::array<double, N>;

struct Options {
  double rtol = 1e-10;
  double atol = 1e-10;
  double max_step = std::numeric_limits<double>::infinity();
  double initial_step = 0.0;  // 0: automatic
  std::size_t max_steps = 50'000'000;
};

struct Stats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t evaluations = 0;
};

/// Interpolant valid on [t0, t0 + h].
template <std::size_t N>
struct DenseSegment {
  double t0 = 0.0;
  double h = 0.0;
  std::array<State<N>, 5> rcont{};

  State<N> eval(double t) const {
    const double s = (t - t0) / h;
    const double s1 = 1.0 - s;
    State<N> y;
    for (std::size_t i = 0; i < N; ++i) {
      y[i] = rcont[0][i] +
             s * (rcont[1][i] +
                  s1 * (rcont[2][i] + s * (rcont[3][i] + s1 * rcont[4][i])));
    }
    return y;
  }
};

/// Piecewise dense output over the whole integration span.
template <std::size_t N>
class DenseSolution {
 public:
  void push(const DenseSegment<N>& seg) { segments_.push_back(seg); }
  bool empty() const { return segments_.empty(); }
  double t_begin() const { return segments_.front().t0; }
  double t_end() const { return segments_.back().t0 + segments_.back().h; }
  std::size_t size() const { return segments_.size(); }

  State<N> eval(double t) const {
    auto it = std::upper_bound(
        segments_.begin(), segments_.end(), t,
        [](double v, const DenseSegment<N>& s) { return v < s.t0; });
    if (it != segments_.begin()) --it;
    return it->eval(t);
  }

 private:
  std::vector<DenseSegment<N>> segments_;
};

namespace detail {

inline constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0,
                        c5 = 8.0 / 9.0;
inline constexpr double a21 = 1.0 / 5.0;
inline constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
inline constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
inline constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                        a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
inline constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0,
                        a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                        a65 = -5103.0 / 18656.0;
inline constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0,
                        a74 = 125.0 / 192.0, a75 = -2187.0 / 6784.0,
                        a76 = 11.0 / 84.0;
inline constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0,
                        e4 = 71.0 / 1920.0, e5 = -17253.0 / 339200.0,
                        e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
inline constexpr double d1 = -12715105075.0 / 11282082432.0,
                        d3 = 87487479700.0 / 32700410799.0,
                        d4 = -10690763975.0 / 1880347072.0,
                        d5 = 701980252875.0 / 199316789632.0,
                        d6 = -1453857185.0 / 822651844.0,
                        d7 = 69997945.0 / 29380423.0;

template <std::size_t N>
bool all_finite(const State<N>& y) {
  return std::all_of(y.begin(), y.end(), [](double v) { return std::isfinite(v); });
}

}  // namespace detail

/// Integrates y' = f(t, y) from t0 across every point of `stops` (increasing,
/// all > t0), landing exactly on each. `on_stop(t, y)` runs at each stop and
/// may throw to abort. Every accepted step is appended to `dense` if given.
///
/// A right-hand side that throws DomainError or returns non-finite values
/// makes the trial step fail and shrink; the error is rethrown (or reported
/// as StepFailure) once the step size underflows.
template <std::size_t N, class Rhs, class OnStop>
Stats dopri45(Rhs&& f, double t0, State<N> y, std::span<const double> stops,
              const Options& opt, OnStop&& on_stop,
              DenseSolution<N>* dense = nullptr) {
  using namespace detail;
  Stats stats;
  if (stops.empty()) return stats;
  const double t_end = stops.back();
  if (!(t_end > t0)) {
    throw Error(ErrorKind::BadParameter, "integration span must be positive");
  }

  auto eval = [&](double t, const State<N>& x, State<N>& out) -> bool {
    ++stats.evaluations;
    try {
      out = f(t, x);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DomainError) throw;
      return false;
    }
    return all_finite(out);
  };

  auto scale = [&](double a, double b) {
    return opt.atol + opt.rtol * std::max(std::abs(a), std::abs(b));
  };

  State<N> k1, k2, k3, k4, k5, k6, k7, ytmp, y1;
  if (!eval(t0, y, k1)) {
    throw Error(ErrorKind::DomainError, "right-hand side undefined at start");
  }

  double h = opt.initial_step;
  if (!(h > 0.0)) {
    // Initial guess from the size of y and y' (Hairer's hinit, order 5).
    double dnf = 0.0, dny = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sk = scale(y[i], y[i]);
      dnf += (k1[i] / sk) * (k1[i] / sk);
      dny += (y[i] / sk) * (y[i] / sk);
    }
    h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : 0.01 * std::sqrt(dny / dnf);
    h = std::min(h, opt.max_step);
    for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * k1[i];
    double der2 = 0.0;
    if (eval(t0 + h, ytmp, k2)) {
      for (std::size_t i = 0; i < N; ++i) {
        const double d = (k2[i] - k1[i]) / scale(y[i], y[i]);
        der2 += d * d;
      }
      der2 = std::sqrt(der2) / h;
    }
    const double der12 = std::max(std::abs(der2), std::sqrt(dnf));
    const double h1 = der12 <= 1e-15 ? std::max(1e-6, h * 1e-3)
                                     : std::pow(0.01 / der12, 1.0 / 5.0);
    h = std::min({100.0 * h, h1, opt.max_step});
  }

  constexpr double beta = 0.04, expo1 = 0.2 - beta * 0.75, safe = 0.9;
  constexpr double facc1 = 1.0 / 0.2, facc2 = 1.0 / 10.0;
  double facold = 1e-4;
  bool last_rejected = false;
  bool domain_failure = false;

  double t = t0;
  std::size_t next_stop = 0;
  while (next_stop < stops.size() && !(stops[next_stop] > t)) ++next_stop;

  while (next_stop < stops.size()) {
    if (stats.accepted + stats.rejected >= opt.max_steps) {
      throw Error(ErrorKind::StepFailure, "maximum number of steps exceeded");
    }
    const double target = stops[next_stop];
    const double hmin = 16.0 * std::numeric_limits<double>::epsilon() *
                        std::max(1.0, std::abs(t));
    if (h < hmin) {
      if (domain_failure) {
        throw Error(ErrorKind::DomainError,
                    "trajectory enters the potential's singular set");
      }
      throw Error(ErrorKind::StepFailure, "step size underflow");
    }
    double h_try = h;
    bool clipped = false;
    if (t + h_try >= target - hmin) {
      h_try = target - t;
      clipped = true;
    }

    bool ok = true;
    for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h_try * a21 * k1[i];
    ok = ok && eval(t + c2 * h_try, ytmp, k2);
    if (ok) {
      for (std::size_t i = 0; i < N; ++i)
        ytmp[i] = y[i] + h_try * (a31 * k1[i] + a32 * k2[i]);
      ok = eval(t + c3 * h_try, ytmp, k3);
    }
    if (ok) {
      for (std::size_t i = 0; i < N; ++i)
        ytmp[i] = y[i] + h_try * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
      ok = eval(t + c4 * h_try, ytmp, k4);
    }
    if (ok) {
      for (std::size_t i = 0; i < N; ++i)
        ytmp[i] = y[i] + h_try * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] +
                                  a54 * k4[i]);
      ok = eval(t + c5 * h_try, ytmp, k5);
    }
    if (ok) {
      for (std::size_t i = 0; i < N; ++i)
        ytmp[i] = y[i] + h_try * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] +
                                  a64 * k4[i] + a65 * k5[i]);
      ok = eval(t + h_try, ytmp, k6);
    }
    if (ok) {
      for (std::size_t i = 0; i < N; ++i)
        y1[i] = y[i] + h_try * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] +
                                a75 * k5[i] + a76 * k6[i]);
      ok = eval(t + h_try, y1, k7);
    }
    if (!ok) {
      domain_failure = true;
      ++stats.rejected;
      h = 0.25 * h_try;
      last_rejected = true;
      continue;
    }
    domain_failure = false;

    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double ei = h_try * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] +
                                 e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double r = ei / scale(y[i], y1[i]);
      err += r * r;
    }
    err = std::sqrt(err / static_cast<double>(N));

    const double fac11 = std::pow(err, expo1);
    if (err <= 1.0) {
      double fac = fac11 / std::pow(facold, beta);
      fac = std::max(facc2, std::min(facc1, fac / safe));
      double h_new = std::min(h_try / fac, opt.max_step);
      if (last_rejected) h_new = std::min(h_new, h_try);
      facold = std::max(err, 1e-4);

      if (dense) {
        DenseSegment<N> seg;
        seg.t0 = t;
        seg.h = h_try;
        for (std::size_t i = 0; i < N; ++i) {
          const double dy = y1[i] - y[i];
          const double bspl = h_try * k1[i] - dy;
          seg.rcont[0][i] = y[i];
          seg.rcont[1][i] = dy;
          seg.rcont[2][i] = bspl;
          seg.rcont[3][i] = dy - h_try * k7[i] - bspl;
          seg.rcont[4][i] = h_try * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] +
                                     d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
        }
        dense->push(seg);
      }

      ++stats.accepted;
      t = clipped ? target : t + h_try;
      y = y1;
      k1 = k7;
      last_rejected = false;
      // A clipped step says nothing about the natural step size.
      h = clipped ? std::max(h, h_new) : h_new;
      h = std::min(h, opt.max_step);
      while (next_stop < stops.size() && !(stops[next_stop] > t)) {
        on_stop(stops[next_stop], y);
        ++next_stop;
      }
    } else {
      ++stats.rejected;
      h = h_try / std::min(facc1, fac11 / safe);
      last_rejected = true;
    }
  }
  return stats;
}

}  // namespace ptb::ode
