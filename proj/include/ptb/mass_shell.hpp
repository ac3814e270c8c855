#pragma once

#include <functional>
#include <utility>

namespace ptb {

/// Algebraic state of a bound or scattering system with fixed masses and
/// fixed binding integral Lambda.
struct MassShell {
  double m1 = 0.0;  // m1 <= m2
  double m2 = 0.0;
  double mu = 0.0;  // (m1^2 + m2^2) / 2
  double nu = 0.0;  // (m1^2 - m2^2) / 2, never positive
  double lambda_ = 0.0;
  double M2 = 0.0;  // k.k
  double M = 0.0;
  double E1 = 0.0;  // individual energies P.p_a / |P|
  double E2 = 0.0;
};

/// Both roots of M^4 - 4(mu+Lambda) M^2 + 4 nu^2 = 0.
struct QuarticRoots {
  double plus = 0.0;
  double minus = 0.0;
};

/// Admissible shell for masses (m1 <= m2) and Lambda; the plus root.
/// Throws BadParameter, LambdaBoundViolation, RealityViolation or
/// EnergyConditionViolation.
MassShell mass_shell_from_lambda(double m1, double m2, double lambda_);

/// Shell fixed by its invariants instead of the masses: keeps M2 as given and
/// recovers m1^2 = mu + nu, m2^2 = mu - nu with mu = M^2/4 + nu^2/M^2 - Lambda.
MassShell mass_shell_from_invariants(double M2, double nu, double lambda_);

/// Lambda = M^2/4 + nu^2/M^2 - mu.
double lambda_from_M2(double m1, double m2, double M2);

QuarticRoots quartic_roots(double m1, double m2, double lambda_);

/// M^4 - 4(mu+Lambda) M^2 + 4 nu^2.
double quartic_residual(double M2, double mu, double nu, double lambda_);

/// (M - m1 - m2) 2 m0 / Lambda with m0 = m1 m2 / (m1 + m2); tends to 1 as
/// Lambda -> 0 and returns 1 at Lambda = 0.
double nonrel_check(double m1, double m2, double lambda_);

/// (E1 - m1, E2 - m2).
std::pair<double, double> individual_energy_limits(double m1, double m2,
                                                   double lambda_);

/// Solves M = M(m1, m2, Lambda(M)) when the binding integral itself depends
/// on the total mass (P^2-dependent potentials). Damped fixed-point iteration
/// with a bracketing fallback; relative tolerance `tol` on M.
MassShell self_consistent_shell(double m1, double m2,
                                const std::function<double(double M)>& lambda_of_M,
                                double tol = 1e-12);

}  // namespace ptb
