//
//  mat3.hpp
//  foaaug
//
//  Distributed under the Apache License, Version 2.0.
//  See the accompanying file LICENSE or http://www.apache.org/licenses/LICENSE-2.0.html
//

#pragma once

#include <array>
#include <cmath>

#include "foaaug/angles.hpp"

namespace foaaug {

/// Row-major 3x3 matrix acting on (x, y, z) column vectors. Defaults to the
/// identity. Used both for soundfield channel transforms and for Cartesian
/// label transforms, which keeps those two applications bit-consistent.
struct Mat3 {
  std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

  static Mat3 identity() { return {}; }

  static Mat3 diagonal(double a, double b, double c) {
    return {{a, 0, 0, 0, b, 0, 0, 0, c}};
  }

  /// Right-handed rotation about the z axis.
  static Mat3 rotation_z(double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return {{c, -s, 0, s, c, 0, 0, 0, 1}};
  }

  double operator()(int r, int c) const { return m[3 * r + c]; }
  double& operator()(int r, int c) { return m[3 * r + c]; }

  Vec3 operator*(const Vec3& v) const {
    return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
            m[3] * v.x + m[4] * v.y + m[5] * v.z,
            m[6] * v.x + m[7] * v.y + m[8] * v.z};
  }

  Mat3 operator*(const Mat3& o) const {
    Mat3 r{};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        r(i, j) = (*this)(i, 0) * o(0, j) + (*this)(i, 1) * o(1, j) +
                  (*this)(i, 2) * o(2, j);
      }
    }
    return r;
  }

  Mat3 transposed() const {
    return {{m[0], m[3], m[6], m[1], m[4], m[7], m[2], m[5], m[8]}};
  }

  double det() const {
    return m[0] * (m[4] * m[8] - m[5] * m[7]) -
           m[1] * (m[3] * m[8] - m[5] * m[6]) +
           m[2] * (m[3] * m[7] - m[4] * m[6]);
  }

  bool operator==(const Mat3& o) const { return m == o.m; }
};

/// Orthonormal channel/label transform (rotation or rotoreflection):
/// R R^T = I within tolerance, |det R| = 1.
using Rotation3 = Mat3;

inline double max_abs_diff(const Mat3& a, const Mat3& b) {
  double r = 0.0;
  for (int i = 0; i < 9; ++i) r = std::max(r, std::abs(a.m[i] - b.m[i]));
  return r;
}

/// Entrywise infinity norm of M M^T - I.
inline double orthonormality_error(const Mat3& m) {
  return max_abs_diff(m * m.transposed(), Mat3::identity());
}

inline bool is_orthonormal(const Mat3& m, double tol = 1e-10) {
  return orthonormality_error(m) <= tol && std::abs(std::abs(m.det()) - 1.0) <= tol;
}

}  // namespace foaaug
