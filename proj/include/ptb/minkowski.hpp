#pragma once

#include <cmath>

namespace ptb {

/// Euclidean 3-vector. Used for rest-frame spatial parts.
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3& operator+=(const Vec3& o) {
    x += o.x; y += o.y; z += o.z;
    return *this;
  }
  constexpr Vec3& operator-=(const Vec3& o) {
    x -= o.x; y -= o.y; z -= o.z;
    return *this;
  }
  constexpr Vec3& operator*=(double s) {
    x *= s; y *= s; z *= s;
    return *this;
  }
  friend constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
  friend constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
  friend constexpr Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
  friend constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
  friend constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

constexpr double dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

/// Contravariant four-vector (t, x, y, z) with c = 1. The metric signature is
/// (+,-,-,-), so timelike vectors have a positive square.
struct FourVector {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  static constexpr FourVector from_parts(double t, const Vec3& s) {
    return {t, s.x, s.y, s.z};
  }
  constexpr Vec3 spatial() const { return {x, y, z}; }

  constexpr FourVector& operator+=(const FourVector& o) {
    t += o.t; x += o.x; y += o.y; z += o.z;
    return *this;
  }
  constexpr FourVector& operator-=(const FourVector& o) {
    t -= o.t; x -= o.x; y -= o.y; z -= o.z;
    return *this;
  }
  constexpr FourVector& operator*=(double s) {
    t *= s; x *= s; y *= s; z *= s;
    return *this;
  }
  friend constexpr FourVector operator+(FourVector a, const FourVector& b) {
    return a += b;
  }
  friend constexpr FourVector operator-(FourVector a, const FourVector& b) {
    return a -= b;
  }
  friend constexpr FourVector operator-(const FourVector& a) {
    return {-a.t, -a.x, -a.y, -a.z};
  }
  friend constexpr FourVector operator*(FourVector a, double s) { return a *= s; }
  friend constexpr FourVector operator*(double s, FourVector a) { return a *= s; }
  friend constexpr bool operator==(const FourVector&, const FourVector&) = default;
};

/// a.b = a^0 b^0 - a.b (spatial).
constexpr double lorentz_dot(const FourVector& a, const FourVector& b) {
  return a.t * b.t - a.x * b.x - a.y * b.y - a.z * b.z;
}

/// Projection of xi orthogonal to the timelike vector P:
/// xi - (P.xi / P.P) P. Throws NonTimelikeP when P.P <= 0.
FourVector tilde_project(const FourVector& xi, const FourVector& P);

// Pure (rotation-free) boosts between an arbitrary frame and the rest frame of
// a future-pointing timelike k, in which k reads (sqrt(k.k), 0, 0, 0).
FourVector boost_to_rest(const FourVector& v, const FourVector& k);
FourVector boost_from_rest(const FourVector& v, const FourVector& k);

}  // namespace ptb
