#pragma once

#include <array>
#include <string_view>

#include "ptb/mass_shell.hpp"
#include "ptb/potential.hpp"
#include "ptb/reduced_dynamics.hpp"

namespace ptb {

struct CircularOrbit {
  double rho = 0.0;     // |ztil|
  double speed2 = 0.0;  // |ytil|^2
  double Omega = 0.0;   // angular frequency in lambda
  double l2 = 0.0;      // L^2 = rho^2 speed2
  double dTdlambda = 0.0;
  double period_T = 0.0;  // (2 pi / Omega) dT/dlambda
  double F = 0.0;
  double G = 0.0;
  double lambda_ = 0.0;  // binding integral -N carried by this orbit
  ReducedState initial;  // ztil along x, ytil along y
};

/// Circular orbit of angular momentum l2 for a model with {z~, V} = 0 and
/// dV/d(z~.y~) = 0. Only shell.M2 and shell.nu are used; the orbit's own
/// binding integral is reported in `lambda_`.
///
/// Setting d(z~.y~)/dlambda = 0 gives the radial balance
///   |ytil|^2 = 2 (dV/dz~^2) rho^2,   Omega^2 = 2 dV/dz~^2,
/// and with l2 = rho^2 |ytil|^2 one scalar equation in rho, bracketed by a
/// logarithmic scan over [1e-6, 1e6] and refined by TOMS 748.
/// Throws NotCentral, BadParameter, NoRoot or Degenerate.
CircularOrbit find_circular(const PotentialSpec& model, const MassShell& shell,
                            double l2);

/// Shell built from (M^2, nu) of `shell` and the orbit's own Lambda.
MassShell shell_for_orbit(const CircularOrbit& orbit, const MassShell& shell);

struct ConstancyReport {
  static constexpr std::array<std::string_view, 7> kNames = {
      "P2", "ztil2", "ytil2", "zy", "w", "F", "G"};
  std::array<double, 7> variation{};  // max relative variation over a period
  double max_variation = 0.0;
  double tolerance = 1e-9;
  bool passed = false;
};

/// Integrates one lambda-period and measures how much each quintet member and
/// F, G vary (relative to their natural scale on the orbit).
ConstancyReport verify_constancy(const CircularOrbit& orbit, const PotentialSpec& model,
                         const MassShell& shell, const IntegratorOptions& opts = {});

struct PeriodicityReport {
  double ztil_closure = 0.0;  // |ztil(2pi/Omega) - ztil(0)| / rho
  double ytil_closure = 0.0;  // same for ytil, relative to |ytil|
  double T_advance = 0.0;
  double period_T_error = 0.0;       // |T_advance - period_T|
  double linear_fit_residual = 0.0;  // max |T - (a + b lambda)|
  double omega_observed = 0.0;       // from successive zero crossings
  double omega_rel_error = 0.0;
  bool passed = false;
};

PeriodicityReport verify_periodicity(const CircularOrbit& orbit,
                                     const PotentialSpec& model,
                                     const MassShell& shell,
                                     const IntegratorOptions& opts = {});

}  // namespace ptb
