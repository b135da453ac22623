//
//  channels_first.hpp
//  foaaug
//
//  Channels First augmentation: one random orthonormal matrix applied to the
//  (X, Y, Z) channels, with labels dragged along through Cartesian space.
//  Works for any number of overlapping sources; offers no control over where
//  the labels end up.
//
//  Distributed under the Apache License, Version 2.0.
//  See the accompanying file LICENSE or http://www.apache.org/licenses/LICENSE-2.0.html
//

#pragma once

#include <optional>

#include "foaaug/angles.hpp"
#include "foaaug/error.hpp"
#include "foaaug/mat3.hpp"
#include "foaaug/rng.hpp"
#include "foaaug/signal.hpp"

namespace foaaug {

/// Modified Gram-Schmidt on the columns, with one re-orthogonalization pass
/// for numerical stability. Returns nullopt when the input is (numerically)
/// rank deficient: any post-projection column norm below 1e-8.
inline std::optional<Mat3> gram_schmidt(const Mat3& a) {
  Mat3 q{};
  for (int col = 0; col < 3; ++col) {
    Vec3 v{a(0, col), a(1, col), a(2, col)};
    for (int pass = 0; pass < 2; ++pass) {
      for (int prev = 0; prev < col; ++prev) {
        const Vec3 u{q(0, prev), q(1, prev), q(2, prev)};
        v = v - u * dot(u, v);
      }
    }
    const double n = v.norm();
    if (n < 1e-8) return std::nullopt;
    q(0, col) = v.x / n;
    q(1, col) = v.y / n;
    q(2, col) = v.z / n;
  }
  return q;
}

/// Random orthonormal matrix: i.i.d. standard normal entries, then
/// Gram-Schmidt. The seed fully determines the output. Determinants of both
/// signs occur, so the result is a rotation or a rotoreflection; the
/// distribution is NOT exactly Haar-uniform and only orthonormality is part
/// of the contract. Rank-deficient draws are redrawn, at most 100 times
/// before kRngFailure.
inline Rotation3 random_orthonormal(Rng& rng) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    Mat3 a{};
    for (auto& v : a.m) v = rng.normal();
    if (const auto q = gram_schmidt(a)) return *q;
  }
  throw FoaError(Errc::kRngFailure, "random matrix kept degenerating during Gram-Schmidt");
}

/// Map every label direction through R in Cartesian coordinates (unit norm
/// throughout): d' = to_spherical(R * to_cartesian(d)). Structure preserved.
inline LabelTrack transform_labels(const Rotation3& rotation, const LabelTrack& labels) {
  LabelTrack out = labels;
  for (auto& frame : out.frames) {
    for (auto& entry : frame) {
      entry.direction = to_spherical(rotation * to_cartesian(entry.direction));
    }
  }
  return out;
}

struct ChannelsFirstResult {
  FoaSignal signal;
  LabelTrack labels;
  Rotation3 rotation;
};

/// Apply a caller-supplied orthonormal matrix. Exposed so tests and
/// restricted-label datasets can inject curated matrices instead of random
/// ones.
inline ChannelsFirstResult apply_channels_first(const FoaSignal& sig,
                                                const LabelTrack& labels,
                                                const Rotation3& rotation) {
  check_span(sig, labels);
  ChannelsFirstResult out{sig, transform_labels(rotation, labels), rotation};
  rotate_xyz(out.signal, rotation);
  return out;
}

inline ChannelsFirstResult apply_channels_first(const FoaSignal& sig,
                                                const LabelTrack& labels, Rng& rng) {
  return apply_channels_first(sig, labels, random_orthonormal(rng));
}

}  // namespace foaaug
