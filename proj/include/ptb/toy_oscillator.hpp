#pragma once

#include <utility>

#include "ptb/mass_shell.hpp"
#include "ptb/minkowski.hpp"
#include "ptb/reduced_dynamics.hpp"

namespace ptb {

/// Closed-form solution of the harmonic model V = chi sqrt(P^2) z~^2 in the
/// rest frame:
///   ztil = A sin(W l + C) + B cos(W l + C)
///   ytil = W (A cos(W l + C) - B sin(W l + C)),   W = sqrt(2 chi M).
struct ToyParams {
  double chi = 0.0;
  double M = 0.0;
  Vec3 A;  // orthogonal half-axes
  Vec3 B;
  double C = 0.0;
  double nu = 0.0;

  double omega() const;
  double a() const { return dot(A, A); }
  double b() const { return dot(B, B); }
  /// Lambda = 2 chi M (a + b).
  double lambda_() const;
};

/// Checks chi > 0, M > 0, nu <= 0 and A.B = 0.
void validate(const ToyParams& p);

/// Parameters with M fixed self-consistently from the masses: the orbit's
/// Lambda depends on M, and M depends on Lambda through the mass shell.
std::pair<ToyParams, MassShell> toy_params_from_masses(double m1, double m2,
                                                       double chi, const Vec3& A,
                                                       const Vec3& B, double C = 0.0);

/// Shell with M and nu exactly as given and Lambda from the orbit.
MassShell toy_shell(const ToyParams& p);

ReducedState toy_initial_state(const ToyParams& p);

std::pair<Vec3, Vec3> analytic_state(const ToyParams& p, double lambda_);

/// F = -chi M [a sin^2(W l + C) + b cos^2(W l + C)].
double F_analytic(const ToyParams& p, double lambda_);

/// Integral of F from 0 to lambda.
double analytic_intF(const ToyParams& p, double lambda_);

/// T = lambda (M/4 - nu^2/M^3) + intF / M, with T(0) = 0.
double analytic_T(const ToyParams& p, double lambda_);

struct ToyComparison {
  double max_ztil_dev = 0.0;
  double max_ytil_dev = 0.0;
  double max_intF_dev = 0.0;
  double max_T_dev = 0.0;
  double max_deviation = 0.0;  // max of the above
  double min_dTdlambda = 0.0;
  std::size_t accepted_steps = 0;
};

/// Integrates the harmonic model numerically over `periods` lambda-periods and
/// compares every sample with the closed form.
ToyComparison compare_with_integration(const ToyParams& p, double periods,
                                       const IntegratorOptions& opts = {});

}  // namespace ptb
