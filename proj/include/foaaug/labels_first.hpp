//
//  labels_first.hpp
//  foaaug
//
//  Labels First augmentation: pick the target labels, then rotate the
//  channels to match. Azimuth moves through a z-axis rotation shared by all
//  samples; elevation moves through a per-frame axis-angle rotation whose
//  axis lies in the horizontal plane, perpendicular to the (new) azimuth.
//
//  Distributed under the Apache License, Version 2.0.
//  See the accompanying file LICENSE or http://www.apache.org/licenses/LICENSE-2.0.html
//

#pragma once

#include <algorithm>
#include <cmath>

#include "foaaug/angles.hpp"
#include "foaaug/error.hpp"
#include "foaaug/mat3.hpp"
#include "foaaug/rng.hpp"
#include "foaaug/signal.hpp"

namespace foaaug {

enum class ElevationRangeMode {
  kLabelRange,  // keep outputs inside dataset elevation limits
  kFixedRange,  // draw the shift from a fixed interval, domain may extend
};

/// How the elevation shift is drawn. In kLabelRange mode [range_min,
/// range_max] are the dataset's elevation limits and the drawn shift is
/// guaranteed to keep every label inside them. In kFixedRange mode the shift
/// itself is drawn from [range_min, range_max].
struct ElevationRangePolicy {
  ElevationRangeMode mode = ElevationRangeMode::kLabelRange;
  double range_min = -kHalfPi;  // radians
  double range_max = kHalfPi;
};

/// The random draw an augmentation call made, recorded for reproducibility.
struct LabelsFirstDraw {
  double alpha = 0.0;  // azimuth shift
  double beta = 0.0;   // elevation shift
};

/// Rotation axis for shifting elevation at azimuth phi: the horizontal unit
/// vector at phi rotated by -pi/2 about z, i.e. (sin phi, -cos phi, 0).
/// Rotating about it by +beta raises the elevation at that azimuth by beta.
inline CartesianDir elevation_axis(double azimuth) {
  return {std::sin(azimuth), -std::cos(azimuth), 0.0};
}

/// Axis-angle rotation of v about the unit axis u:
/// v cos b + (u x v) sin b + u (u.v)(1 - cos b).
inline Vec3 rodrigues_rotate(const Vec3& v, const CartesianDir& u, double beta) {
  const double c = std::cos(beta);
  const double s = std::sin(beta);
  const Vec3 uxv = cross(u, v);
  const double ud = dot(u, v);
  return {v.x * c + uxv.x * s + u.x * ud * (1.0 - c),
          v.y * c + uxv.y * s + u.y * ud * (1.0 - c),
          v.z * c + uxv.z * s + u.z * ud * (1.0 - c)};
}

/// Draw the elevation shift. kLabelRange inspects the labels' elevation
/// extremes (m, M) and draws uniformly from (range_min - m, range_max - M),
/// which keeps every shifted label inside [range_min, range_max]; an empty
/// or degenerate interval yields 0 so pipelines never stall on tracks that
/// already span the full range. kFixedRange draws from [range_min, range_max).
inline double select_beta(const LabelTrack& labels, const ElevationRangePolicy& policy,
                          Rng& rng) {
  if (policy.mode == ElevationRangeMode::kFixedRange) {
    return rng.uniform(policy.range_min, policy.range_max);
  }
  bool any = false;
  double min_el = 0.0;
  double max_el = 0.0;
  for (const auto& frame : labels.frames) {
    for (const auto& entry : frame) {
      if (!any) {
        min_el = max_el = entry.direction.elevation;
        any = true;
      } else {
        min_el = std::min(min_el, entry.direction.elevation);
        max_el = std::max(max_el, entry.direction.elevation);
      }
    }
  }
  if (!any) {
    throw FoaError(Errc::kNoActiveFrames, "label-range mode needs at least one active frame");
  }
  const double lo = policy.range_min - min_el;
  const double hi = policy.range_max - max_el;
  if (!(lo < hi)) return 0.0;
  return rng.uniform(lo, hi);
}

struct LabelsFirstResult {
  FoaSignal signal;
  LabelTrack labels;
  LabelsFirstDraw draw;
};

/// Deterministic core of the method for explicit (alpha, beta).
///
/// Per the frame-level model, the elevation axis is constant within one
/// label frame and the elevation rotation is skipped entirely for frames
/// with no active source: there is no label there to define the axis, so
/// silence and ambience in those frames only receive the azimuth rotation.
/// If a shifted elevation crosses a pole (possible in kFixedRange mode) the
/// label folds onto the equivalent canonical direction, which is exactly
/// where the channel rotation moved the source.
inline LabelsFirstResult apply_labels_first(const FoaSignal& sig, const LabelTrack& labels,
                                            LabelsFirstDraw draw) {
  check_span(sig, labels);
  if (labels.max_overlap() > 1) {
    throw FoaError(Errc::kOverlapUnsupported,
                   "labels-first supports at most one active source per frame");
  }

  LabelsFirstResult out{sig, labels, draw};

  // Azimuth: shift labels, rotate all samples about z.
  for (auto& frame : out.labels.frames) {
    for (auto& entry : frame) {
      entry.direction.azimuth = wrap_azimuth(entry.direction.azimuth + draw.alpha);
    }
  }
  rotate_xyz(out.signal, Mat3::rotation_z(draw.alpha));

  // Elevation: shift labels, rotate each active frame's samples about its
  // per-frame axis. Samples past the labelled span count as inactive.
  const std::size_t hop = hop_samples(labels.frame_hop, sig.sample_rate);
  const std::size_t length = out.signal.length();
  for (std::size_t f = 0; f < out.labels.frames.size(); ++f) {
    auto& frame = out.labels.frames[f];
    if (frame.empty()) continue;
    auto& entry = frame.front();
    const double new_azimuth = entry.direction.azimuth;
    entry.direction =
        canonical_direction(new_azimuth, entry.direction.elevation + draw.beta);

    const std::size_t begin = f * hop;
    if (begin >= length) break;
    const std::size_t end = std::min(length, begin + hop);
    const CartesianDir axis = elevation_axis(new_azimuth);
    auto& cx = out.signal.channels[kChanX];
    auto& cy = out.signal.channels[kChanY];
    auto& cz = out.signal.channels[kChanZ];
    for (std::size_t i = begin; i < end; ++i) {
      const Vec3 r = rodrigues_rotate({cx[i], cy[i], cz[i]}, axis, draw.beta);
      cx[i] = r.x;
      cy[i] = r.y;
      cz[i] = r.z;
    }
  }
  return out;
}

/// Random-draw front end: alpha uniform in [0, 2pi), beta via select_beta.
inline LabelsFirstResult apply_labels_first(const FoaSignal& sig, const LabelTrack& labels,
                                            const ElevationRangePolicy& policy, Rng& rng) {
  LabelsFirstDraw draw;
  draw.alpha = rng.uniform(0.0, kTwoPi);
  draw.beta = select_beta(labels, policy, rng);
  return apply_labels_first(sig, labels, draw);
}

}  // namespace foaaug
