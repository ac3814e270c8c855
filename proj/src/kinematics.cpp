#include "ptb/kinematics.hpp"

#include "ptb/errors.hpp"

namespace ptb {

ExternalInternal split(const CanonicalState& s) {
  return {s.p1 + s.p2, 0.5 * (s.q1 + s.q2), 0.5 * (s.p1 - s.p2), s.q1 - s.q2};
}

CanonicalState merge(const ExternalInternal& ei) {
  return {ei.Q + 0.5 * ei.z, ei.Q - 0.5 * ei.z, 0.5 * ei.P + ei.y,
          0.5 * ei.P - ei.y};
}

ScalarQuintet scalar_quintet(const ExternalInternal& ei) {
  const FourVector zt = tilde_project(ei.z, ei.P);
  const FourVector yt = tilde_project(ei.y, ei.P);
  ScalarQuintet q;
  q.P2 = lorentz_dot(ei.P, ei.P);
  q.ztil2 = lorentz_dot(zt, zt);
  q.ytil2 = lorentz_dot(yt, yt);
  q.zy = lorentz_dot(zt, yt);
  q.yP = lorentz_dot(ei.y, ei.P);
  q.w = q.yP * q.yP / q.P2;
  return q;
}

double angular_momentum_L2(const FourVector& ztil, const FourVector& ytil) {
  const double zy = lorentz_dot(ztil, ytil);
  return lorentz_dot(ztil, ztil) * lorentz_dot(ytil, ytil) - zy * zy;
}

double noether_N(const ScalarQuintet& q, double V) { return q.ytil2 + 2.0 * V; }

FourVector center_of_mass(const CanonicalState& state) {
  const ExternalInternal ei = split(state);
  const double p2 = lorentz_dot(ei.P, ei.P);
  if (!(p2 > 0.0)) {
    throw Error(ErrorKind::NonTimelikeP, "center of mass needs P.P > 0");
  }
  return ei.Q + ei.z * (lorentz_dot(ei.y, ei.P) / p2) -
         ei.y * (lorentz_dot(ei.z, ei.P) / p2);
}

}  // namespace ptb
