//
//  steering.hpp
//  foaaug
//
//  Distributed under the Apache License, Version 2.0.
//  See the accompanying file LICENSE or http://www.apache.org/licenses/LICENSE-2.0.html
//

#pragma once

#include <cmath>
#include <numbers>

#include "foaaug/angles.hpp"

namespace foaaug {

inline constexpr double kSqrt3 = std::numbers::sqrt3;

/// Per-channel directional gains for a source at a given direction. W is the
/// omnidirectional channel and is always 1; the dipole gains (x, y, z) are
/// sqrt(3) times the source's unit direction vector, so y^2 + z^2 + x^2 = 3.
/// All four responses are frequency-independent, which is why the whole
/// library can work sample-by-sample in the time domain.
struct SteeringVector {
  double w = 1.0;
  double y = 0.0;
  double z = 0.0;
  double x = 0.0;
};

inline SteeringVector steering_vector(Direction dir) {
  const double ce = std::cos(dir.elevation);
  return {1.0,
          kSqrt3 * std::sin(dir.azimuth) * ce,
          kSqrt3 * std::sin(dir.elevation),
          kSqrt3 * std::cos(dir.azimuth) * ce};
}

}  // namespace foaaug
