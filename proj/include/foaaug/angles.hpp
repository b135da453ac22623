//
//  angles.hpp
//  foaaug
//
//  Angles, unit-sphere directions, and conversions between the spherical and
//  Cartesian forms used throughout the library.
//
//  Distributed under the Apache License, Version 2.0.
//  See the accompanying file LICENSE or http://www.apache.org/licenses/LICENSE-2.0.html
//

#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace foaaug {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kHalfPi = 0.5 * std::numbers::pi;

constexpr double deg_to_rad(double deg) { return deg * (kPi / 180.0); }
constexpr double rad_to_deg(double rad) { return rad * (180.0 / kPi); }

/// Reduce an angle to the canonical azimuth interval [-pi, pi). Equals
/// (a + pi) mod 2pi - pi with a nonnegative modulus; +pi lands on -pi.
/// Angles already in the interval pass through untouched, so wrapping is
/// exactly idempotent.
inline double wrap_azimuth(double a) {
  if (a >= -kPi && a < kPi) return a;
  double r = std::fmod(a + kPi, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  r -= kPi;
  return r < kPi ? r : -kPi;  // fold the rounding case r + 2pi == 2pi
}

/// A point on the unit sphere as azimuth/elevation, in radians.
/// Canonical form: azimuth in [-pi, pi), elevation in [-pi/2, pi/2],
/// azimuth 0 at the poles.
struct Direction {
  double azimuth = 0.0;
  double elevation = 0.0;
};

inline Direction direction_deg(double az_deg, double el_deg) {
  return {deg_to_rad(az_deg), deg_to_rad(el_deg)};
}

/// Plain 3-vector on (x, y, z). Doubles throughout; no SIMD ambitions.
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }

  double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

/// Unit-norm Vec3 holding a direction of arrival.
using CartesianDir = Vec3;

inline double dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

/// Unit vector of a direction: (cos el cos az, cos el sin az, sin el).
inline CartesianDir to_cartesian(Direction d) {
  const double ce = std::cos(d.elevation);
  return {ce * std::cos(d.azimuth), ce * std::sin(d.azimuth), std::sin(d.elevation)};
}

/// Inverse of to_cartesian. The input is renormalized, so anything within
/// ~1e-6 of unit length round-trips cleanly. At the poles (x = y = 0) the
/// azimuth is 0 by convention; a zero vector has no direction and throws.
inline Direction to_spherical(Vec3 v) {
  const double n = v.norm();
  if (!(n > 0.0)) throw std::invalid_argument("to_spherical: zero vector");
  const double x = v.x / n;
  const double y = v.y / n;
  const double z = v.z / n;
  if (std::hypot(x, y) < 1e-12) {
    return {0.0, z >= 0.0 ? kHalfPi : -kHalfPi};
  }
  return {wrap_azimuth(std::atan2(y, x)), std::asin(std::clamp(z, -1.0, 1.0))};
}

/// Great-circle angle between two directions, in [0, pi]. This is the arccos
/// of the clamped dot product, evaluated through atan2 so nearly equal and
/// nearly antipodal pairs keep full accuracy.
inline double angular_distance(Direction a, Direction b) {
  const Vec3 va = to_cartesian(a);
  const Vec3 vb = to_cartesian(b);
  return std::atan2(cross(va, vb).norm(), dot(va, vb));
}

/// Canonical Direction from unconstrained angles: elevation beyond +-pi/2
/// folds over the pole (the azimuth gains pi), then the azimuth wraps.
inline Direction canonical_direction(double azimuth, double elevation) {
  double e = std::remainder(elevation, kTwoPi);  // in [-pi, pi]
  if (e > kHalfPi) {
    e = kPi - e;
    azimuth += kPi;
  } else if (e < -kHalfPi) {
    e = -kPi - e;
    azimuth += kPi;
  }
  return {wrap_azimuth(azimuth), e};
}

}  // namespace foaaug
