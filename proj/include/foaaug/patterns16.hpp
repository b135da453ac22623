//
//  patterns16.hpp
//  foaaug
//
//  The sixteen discrete spatial augmentation patterns: eight rotations/
//  reflections in the horizontal plane times an optional up-down flip.
//  Each pattern pairs an exact label transform with a signed channel
//  permutation, so signal and labels move together.
//
//  Distributed under the Apache License, Version 2.0.
//  See the accompanying file LICENSE or http://www.apache.org/licenses/LICENSE-2.0.html
//

#pragma once

#include <array>
#include <string>
#include <string_view>
#include <utility>

#include "foaaug/angles.hpp"
#include "foaaug/error.hpp"
#include "foaaug/mat3.hpp"
#include "foaaug/rng.hpp"
#include "foaaug/signal.hpp"

namespace foaaug {

/// 3x3 matrix with exactly one entry of +-1 per row and column. Same layout
/// as Mat3; the constraint is a property of the sixteen pattern matrices,
/// checked by tests, not enforced by the type.
using SignedPermutation3 = Mat3;

/// One of the sixteen patterns. azimuth_code 0..7 packs the azimuth map
/// az' = sign*az + offset: codes 0..3 keep the sign (+phi), 4..7 negate it,
/// and code % 4 selects the offset among {0, +pi/2, pi, -pi/2}. Code 0
/// without elevation flip is the identity.
struct PatternId {
  int azimuth_code = 0;
  bool elevation_flip = false;

  static constexpr int kCount = 16;

  int sign() const { return azimuth_code < 4 ? 1 : -1; }

  double offset() const {
    switch (azimuth_code & 3) {
      case 0: return 0.0;
      case 1: return kHalfPi;
      case 2: return kPi;
      default: return -kHalfPi;
    }
  }

  int offset_deg() const {
    switch (azimuth_code & 3) {
      case 0: return 0;
      case 1: return 90;
      case 2: return 180;
      default: return -90;
    }
  }

  int index() const { return azimuth_code + (elevation_flip ? 8 : 0); }

  static PatternId from_index(int i) { return {i & 7, (i & 8) != 0}; }

  bool operator==(const PatternId& o) const {
    return azimuth_code == o.azimuth_code && elevation_flip == o.elevation_flip;
  }
};

inline std::array<PatternId, PatternId::kCount> all_patterns() {
  std::array<PatternId, PatternId::kCount> out{};
  for (int i = 0; i < PatternId::kCount; ++i) out[i] = PatternId::from_index(i);
  return out;
}

inline PatternId random_pattern(Rng& rng) {
  return PatternId::from_index(static_cast<int>(rng.below(PatternId::kCount)));
}

/// Manifest/CLI form: "s{+|-}d{-90|0|+90|+180}e{+|-}", e.g. identity "s+d0e+".
inline std::string pattern_to_string(PatternId p) {
  std::string s = "s";
  s += p.sign() > 0 ? '+' : '-';
  s += 'd';
  const int d = p.offset_deg();
  if (d > 0) s += '+';
  s += std::to_string(d);
  s += 'e';
  s += p.elevation_flip ? '-' : '+';
  return s;
}

inline PatternId pattern_from_string(std::string_view s) {
  const auto fail = [&] {
    throw FoaError(Errc::kParseError, "bad pattern id '" + std::string(s) + "'");
  };
  if (s.size() < 6 || s[0] != 's' || (s[1] != '+' && s[1] != '-') || s[2] != 'd') fail();
  const char last = s.back();
  if (s[s.size() - 2] != 'e' || (last != '+' && last != '-')) fail();
  const std::string digits(s.substr(3, s.size() - 5));
  int deg = 0;
  if (digits == "0") deg = 0;
  else if (digits == "+90") deg = 90;
  else if (digits == "-90") deg = -90;
  else if (digits == "+180") deg = 180;
  else fail();
  int code = 0;
  switch (deg) {
    case 0: code = 0; break;
    case 90: code = 1; break;
    case 180: code = 2; break;
    case -90: code = 3; break;
  }
  if (s[1] == '-') code += 4;
  return {code, last == '-'};
}

/// Label transform: az' = wrap(sign*az + offset), el' = +-el.
inline Direction pattern_label_map(PatternId p, Direction d) {
  const double az = wrap_azimuth(static_cast<double>(p.sign()) * d.azimuth + p.offset());
  return {az, p.elevation_flip ? -d.elevation : d.elevation};
}

/// The signed permutation acting on (X, Y, Z) that realizes the same pattern
/// on the channels. Derived from the steering vectors: with c = cos(offset),
/// s = sin(offset) (each -1, 0 or +1 here) the horizontal block is
/// [[c, -sign*s], [s, sign*c]] and Z picks up the elevation flip. The
/// consistency tests pin matrix and label map to each other on all 16
/// patterns.
inline SignedPermutation3 pattern_channel_matrix(PatternId p) {
  double c = 0.0;
  double s = 0.0;
  switch (p.azimuth_code & 3) {
    case 0: c = 1.0; s = 0.0; break;   // offset 0
    case 1: c = 0.0; s = 1.0; break;   // offset +pi/2
    case 2: c = -1.0; s = 0.0; break;  // offset pi
    default: c = 0.0; s = -1.0; break; // offset -pi/2
  }
  const double g = static_cast<double>(p.sign());
  const double e = p.elevation_flip ? -1.0 : 1.0;
  return {{c, -g * s, 0.0, s, g * c, 0.0, 0.0, 0.0, e}};
}

/// Apply one pattern to a signal/label pair. W is copied bit-identically;
/// per-sample (X, Y, Z) go through the pattern's signed permutation; every
/// label direction goes through the matching label map. Frame structure,
/// source ids and activity are preserved.
inline std::pair<FoaSignal, LabelTrack> apply_pattern(const FoaSignal& sig,
                                                      const LabelTrack& labels,
                                                      PatternId p) {
  check_span(sig, labels);
  FoaSignal out_sig = sig;
  rotate_xyz(out_sig, pattern_channel_matrix(p));
  LabelTrack out_labels = labels;
  for (auto& frame : out_labels.frames) {
    for (auto& entry : frame) entry.direction = pattern_label_map(p, entry.direction);
  }
  return {std::move(out_sig), std::move(out_labels)};
}

}  // namespace foaaug
