//
//  doa_iv.hpp
//  foaaug
//
//  Classical intensity-vector DOA estimation plus the evaluation metrics
//  (DOA error, frame recall). The estimator works on time-domain cross
//  moments: under the steering model E[W*X], E[W*Y], E[W*Z] are proportional
//  to the source's unit direction vector, so the per-frame mean of those
//  products points at the source. Exact for a single noiseless source; for
//  overlapping sources it returns the intensity centroid, which is useful
//  for equivariance checks but is not a multi-source localizer.
//
//  Distributed under the Apache License, Version 2.0.
//  See the accompanying file LICENSE or http://www.apache.org/licenses/LICENSE-2.0.html
//

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "foaaug/angles.hpp"
#include "foaaug/error.hpp"
#include "foaaug/signal.hpp"

namespace foaaug {

/// Per-frame estimator output: activity plus one direction, meaningful only
/// when active.
struct FrameEstimate {
  std::size_t frame_index = 0;
  bool active = false;
  Direction direction;
};

inline constexpr double kDefaultFrameHop = 0.02;           // 20 ms
inline constexpr double kDefaultActivityThreshold = 1e-4;  // of loudest frame

/// Frame-wise intensity-vector DOA estimate. A frame is active when its mean
/// W energy exceeds activity_threshold times the loudest frame's; an active
/// frame whose intensity vector is numerically zero (diffuse field) reports
/// inactive instead of a direction.
inline std::vector<FrameEstimate> estimate_doa(
    const FoaSignal& sig, double frame_hop = kDefaultFrameHop,
    double activity_threshold = kDefaultActivityThreshold) {
  const std::size_t hop = hop_samples(frame_hop, sig.sample_rate);
  const std::size_t n_frames = frame_count_for(sig.length(), hop);
  const auto& w = sig.channels[kChanW];
  const auto& y = sig.channels[kChanY];
  const auto& z = sig.channels[kChanZ];
  const auto& x = sig.channels[kChanX];

  struct FrameMoments {
    double energy = 0.0;
    Vec3 intensity;
  };
  std::vector<FrameMoments> moments(n_frames);
  for (std::size_t f = 0; f < n_frames; ++f) {
    const std::size_t begin = f * hop;
    const std::size_t end = std::min(sig.length(), begin + hop);
    const double inv_n = 1.0 / static_cast<double>(end - begin);
    double energy = 0.0;
    Vec3 c;
    for (std::size_t i = begin; i < end; ++i) {
      energy += w[i] * w[i];
      c.x += w[i] * x[i];
      c.y += w[i] * y[i];
      c.z += w[i] * z[i];
    }
    moments[f] = {energy * inv_n, c * inv_n};
  }

  double max_energy = 0.0;
  for (const auto& m : moments) max_energy = std::max(max_energy, m.energy);

  std::vector<FrameEstimate> out(n_frames);
  for (std::size_t f = 0; f < n_frames; ++f) {
    out[f].frame_index = f;
    const bool loud = max_energy > 0.0 && moments[f].energy > activity_threshold * max_energy;
    if (!loud) continue;
    if (moments[f].intensity.norm() < 1e-12) continue;  // diffuse field
    out[f].active = true;
    out[f].direction = to_spherical(moments[f].intensity);
  }
  return out;
}

/// Mean angular distance, in degrees, over frames active in both tracks.
/// A reference frame with several sources contributes the distance to the
/// nearest one. Throws kNoCoactiveFrames when no frame is active in both.
inline double doa_error_deg(const std::vector<FrameEstimate>& est, const LabelTrack& ref) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& e : est) {
    if (!e.active || e.frame_index >= ref.frames.size()) continue;
    const auto& frame = ref.frames[e.frame_index];
    if (frame.empty()) continue;
    double best = angular_distance(e.direction, frame.front().direction);
    for (std::size_t k = 1; k < frame.size(); ++k) {
      best = std::min(best, angular_distance(e.direction, frame[k].direction));
    }
    sum += rad_to_deg(best);
    ++n;
  }
  if (n == 0) throw FoaError(Errc::kNoCoactiveFrames, "no frame is active in both tracks");
  return sum / static_cast<double>(n);
}

/// Fraction of frames whose estimated activity count matches the reference
/// count. The estimator emits at most one source, so its count is 0 or 1.
/// Tracks of different length are compared over the longer grid with missing
/// frames counted as inactive; two empty tracks agree vacuously (recall 1).
inline double frame_recall(const std::vector<FrameEstimate>& est, const LabelTrack& ref) {
  const std::size_t n = std::max(est.size(), ref.frames.size());
  if (n == 0) return 1.0;
  std::size_t matches = 0;
  for (std::size_t f = 0; f < n; ++f) {
    const std::size_t est_count = (f < est.size() && est[f].active) ? 1 : 0;
    const std::size_t ref_count = f < ref.frames.size() ? ref.frames[f].size() : 0;
    if (est_count == ref_count) ++matches;
  }
  return static_cast<double>(matches) / static_cast<double>(n);
}

}  // namespace foaaug
