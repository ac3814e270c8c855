#pragma once

#include "ptb/minkowski.hpp"

namespace ptb {

/// Canonical positions and momenta of both bodies.
struct CanonicalState {
  FourVector q1, q2;
  FourVector p1, p2;
};

/// External/internal split: P = p1+p2, Q = (q1+q2)/2, y = (p1-p2)/2,
/// z = q1-q2.
struct ExternalInternal {
  FourVector P, Q, y, z;
};

/// The five invariant arguments of a unipotential interaction, plus y.P for
/// convenience (w = (y.P)^2 / P^2 loses its sign).
struct ScalarQuintet {
  double P2 = 0.0;     // P.P
  double ztil2 = 0.0;  // z~.z~, negative for spacelike separations
  double ytil2 = 0.0;  // y~.y~
  double zy = 0.0;     // z~.y~
  double w = 0.0;      // (y.P)^2 / P^2
  double yP = 0.0;     // y.P
};

ExternalInternal split(const CanonicalState& state);
CanonicalState merge(const ExternalInternal& ei);

ScalarQuintet scalar_quintet(const ExternalInternal& ei);

/// L^2 = z~^2 y~^2 - (z~.y~)^2 for vectors orthogonal to the same timelike P.
double angular_momentum_L2(const FourVector& ztil, const FourVector& ytil);

/// N = y~^2 + 2V. Its fixed value on a mass shell is -Lambda.
double noether_N(const ScalarQuintet& q, double V);

/// Xi = Q + (y.P/P^2) z - (z.P/P^2) y. On the surface P.z = 0 this is the
/// energy-weighted mean of q1 and q2.
FourVector center_of_mass(const CanonicalState& state);

}  // namespace ptb
