#include "ptb/minkowski.hpp"

#include "ptb/errors.hpp"

namespace ptb {
namespace {

// Four-velocity u = k/|k| of a future-pointing timelike k.
FourVector four_velocity(const FourVector& k) {
  const double k2 = lorentz_dot(k, k);
  if (!(k2 > 0.0) || !(k.t > 0.0)) {
    throw Error(ErrorKind::NonTimelikeP,
                "boost direction must be timelike and future-pointing");
  }
  return k * (1.0 / std::sqrt(k2));
}

}  // namespace

FourVector tilde_project(const FourVector& xi, const FourVector& P) {
  const double p2 = lorentz_dot(P, P);
  if (!(p2 > 0.0)) {
    throw Error(ErrorKind::NonTimelikeP, "projector needs P.P > 0");
  }
  return xi - P * (lorentz_dot(P, xi) / p2);
}

// With u = (gamma, gamma*beta), a pure boost along beta reads
//   v'^0 = gamma v^0 - u.v,   v' = v + [(u.v)/(gamma+1) - v^0] u
// which equals rotating beta onto the x axis, boosting, and rotating back.
FourVector boost_to_rest(const FourVector& v, const FourVector& k) {
  const FourVector u = four_velocity(k);
  const Vec3 us = u.spatial();
  const Vec3 vs = v.spatial();
  const double uv = dot(us, vs);
  const double t = u.t * v.t - uv;
  const Vec3 s = vs + us * (uv / (u.t + 1.0) - v.t);
  return FourVector::from_parts(t, s);
}

FourVector boost_from_rest(const FourVector& v, const FourVector& k) {
  const FourVector u = four_velocity(k);
  const Vec3 us = u.spatial();
  const Vec3 vs = v.spatial();
  const double uv = dot(us, vs);
  const double t = u.t * v.t + uv;
  const Vec3 s = vs + us * (uv / (u.t + 1.0) + v.t);
  return FourVector::from_parts(t, s);
}

}  // namespace ptb
