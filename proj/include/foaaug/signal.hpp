//
//  signal.hpp
//  foaaug
//
//  Four-channel FOA buffers and frame-based label tracks.
//
//  Distributed under the Apache License, Version 2.0.
//  See the accompanying file LICENSE or http://www.apache.org/licenses/LICENSE-2.0.html
//

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "foaaug/angles.hpp"
#include "foaaug/error.hpp"
#include "foaaug/mat3.hpp"

namespace foaaug {

/// Channel indices in ACN order. This mapping is a hard contract: every file
/// reader/writer and every transform in the library assumes it. Mis-ordered
/// channels silently corrupt all downstream directions.
enum FoaChannel : int { kChanW = 0, kChanY = 1, kChanZ = 2, kChanX = 3 };

/// Four equal-length sample sequences in (W, Y, Z, X) order plus a rate.
struct FoaSignal {
  int sample_rate = 32000;
  std::array<std::vector<double>, 4> channels;

  std::size_t length() const { return channels[0].size(); }

  double duration() const {
    return sample_rate > 0 ? static_cast<double>(length()) / sample_rate : 0.0;
  }

  bool consistent() const {
    return sample_rate > 0 && channels[1].size() == channels[0].size() &&
           channels[2].size() == channels[0].size() &&
           channels[3].size() == channels[0].size();
  }

  static FoaSignal silence(int sample_rate, std::size_t length) {
    FoaSignal s;
    s.sample_rate = sample_rate;
    for (auto& ch : s.channels) ch.assign(length, 0.0);
    return s;
  }
};

/// One active source in one frame.
struct LabelEntry {
  int source_id = 0;
  Direction direction;
};

/// Per-frame lists of active sources on a fixed frame hop. An empty list
/// means the frame is inactive. Within one frame source ids are distinct.
struct LabelTrack {
  double frame_hop = 0.02;  // seconds
  std::vector<std::vector<LabelEntry>> frames;

  double duration() const { return frame_hop * static_cast<double>(frames.size()); }

  std::size_t active_frame_count() const {
    std::size_t n = 0;
    for (const auto& f : frames) n += f.empty() ? 0 : 1;
    return n;
  }

  int max_overlap() const {
    std::size_t n = 0;
    for (const auto& f : frames) n = f.size() > n ? f.size() : n;
    return static_cast<int>(n);
  }
};

/// Samples per label frame; at least 1.
inline std::size_t hop_samples(double frame_hop, int sample_rate) {
  const auto h = static_cast<long long>(std::llround(frame_hop * sample_rate));
  return h > 0 ? static_cast<std::size_t>(h) : 1;
}

inline std::size_t frame_count_for(std::size_t length, std::size_t hop) {
  return length == 0 ? 0 : (length + hop - 1) / hop;
}

/// Throws kSpanMismatch when the label track and the signal cover time spans
/// that differ by more than one frame hop.
inline void check_span(const FoaSignal& sig, const LabelTrack& labels) {
  const double diff = std::abs(sig.duration() - labels.duration());
  if (diff > labels.frame_hop * (1.0 + 1e-9)) {
    throw FoaError(Errc::kSpanMismatch,
                   "signal covers " + std::to_string(sig.duration()) +
                       " s but labels cover " + std::to_string(labels.duration()) +
                       " s (hop " + std::to_string(labels.frame_hop) + " s)");
  }
}

/// Multiply each sample's (X, Y, Z) triple in [begin, end) by m. W untouched.
inline void rotate_xyz(FoaSignal& sig, const Mat3& m, std::size_t begin,
                       std::size_t end) {
  auto& cx = sig.channels[kChanX];
  auto& cy = sig.channels[kChanY];
  auto& cz = sig.channels[kChanZ];
  for (std::size_t i = begin; i < end; ++i) {
    const Vec3 v{cx[i], cy[i], cz[i]};
    const Vec3 r = m * v;
    cx[i] = r.x;
    cy[i] = r.y;
    cz[i] = r.z;
  }
}

inline void rotate_xyz(FoaSignal& sig, const Mat3& m) {
  rotate_xyz(sig, m, 0, sig.length());
}

}  // namespace foaaug
