//
//  verify.hpp
//  foaaug
//
//  End-to-end property checks tying the augmentation methods to the scene
//  encoder and the intensity-vector estimator. Each check builds randomized
//  synthetic scenes, runs one method, and compares against the independent
//  route (re-encoding the scene at the transformed labels, or estimating
//  directions straight from the channels). Used by the `verify` CLI
//  subcommand and by the acceptance suite.
//
//  Distributed under the Apache License, Version 2.0.
//  See the accompanying file LICENSE or http://www.apache.org/licenses/LICENSE-2.0.html
//

#pragma once

#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "foaaug/angles.hpp"
#include "foaaug/channels_first.hpp"
#include "foaaug/doa_iv.hpp"
#include "foaaug/labels_first.hpp"
#include "foaaug/patterns16.hpp"
#include "foaaug/rng.hpp"
#include "foaaug/scene.hpp"
#include "foaaug/signal.hpp"

namespace foaaug::verify {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct Options {
  std::uint64_t seed = 20190705;
  int patterns_single_scenes = 50;
  int patterns_multi_scenes = 20;
  int labels_first_scenes = 100;
  int channels_first_scenes = 50;
  int estimator_scenes = 100;
  double scene_seconds = 2.0;
  int sample_rate = 32000;
  double frame_hop = 0.02;
};

inline std::string format_double(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// Randomized scene construction.

inline Direction random_direction(Rng& rng, double el_min_deg, double el_max_deg) {
  return {rng.uniform(-kPi, kPi),
          deg_to_rad(rng.uniform(el_min_deg, el_max_deg))};
}

/// One white-noise source with a random onset; half the time it is static,
/// otherwise it drifts linearly between two random directions over the
/// scene. The trajectory covers every scene frame.
inline SourceTrack random_source(Rng& rng, int id, int sample_rate, std::size_t length,
                                 double frame_hop, double el_min_deg, double el_max_deg) {
  SourceTrack src;
  src.source_id = id;
  src.onset = static_cast<std::size_t>(rng.below(length / 4 + 1));
  const std::size_t n = length - src.onset;
  src.samples.resize(n);
  for (auto& v : src.samples) v = rng.uniform(-1.0, 1.0);

  const std::size_t n_frames = frame_count_for(length, hop_samples(frame_hop, sample_rate));
  const Direction start = random_direction(rng, el_min_deg, el_max_deg);
  const bool moving = rng.uniform() < 0.5;
  const Direction stop = moving ? random_direction(rng, el_min_deg, el_max_deg) : start;
  src.trajectory.reserve(n_frames);
  for (std::size_t f = 0; f < n_frames; ++f) {
    const double u = n_frames > 1 ? static_cast<double>(f) / static_cast<double>(n_frames - 1) : 0.0;
    const double daz = wrap_azimuth(stop.azimuth - start.azimuth);
    src.trajectory.push_back({wrap_azimuth(start.azimuth + u * daz),
                              start.elevation + u * (stop.elevation - start.elevation)});
  }
  return src;
}

inline std::vector<SourceTrack> random_scene(Rng& rng, int n_sources, int sample_rate,
                                             std::size_t length, double frame_hop,
                                             double el_min_deg = -85.0,
                                             double el_max_deg = 85.0) {
  std::vector<SourceTrack> out;
  out.reserve(static_cast<std::size_t>(n_sources));
  for (int i = 0; i < n_sources; ++i) {
    out.push_back(random_source(rng, i, sample_rate, length, frame_hop, el_min_deg, el_max_deg));
  }
  return out;
}

/// Copy of the sources with every trajectory direction mapped through fn.
inline std::vector<SourceTrack> map_source_directions(
    const std::vector<SourceTrack>& sources,
    const std::function<Direction(Direction)>& fn) {
  std::vector<SourceTrack> out = sources;
  for (auto& src : out) {
    for (auto& d : src.trajectory) d = fn(d);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Comparison helpers.

/// Largest per-frame relative RMS difference between two equal-shape signals,
/// over all four channels. Frames with a silent reference must be silent in
/// the test signal too, else the result is infinite. An optional mask
/// restricts the comparison to selected frames.
inline double max_frame_relative_rms(const FoaSignal& test, const FoaSignal& ref,
                                     double frame_hop,
                                     const std::vector<bool>* frame_mask = nullptr) {
  const std::size_t hop = hop_samples(frame_hop, ref.sample_rate);
  const std::size_t n_frames = frame_count_for(ref.length(), hop);
  double worst = 0.0;
  for (std::size_t f = 0; f < n_frames; ++f) {
    if (frame_mask && (f >= frame_mask->size() || !(*frame_mask)[f])) continue;
    const std::size_t begin = f * hop;
    const std::size_t end = std::min(ref.length(), begin + hop);
    double diff_sq = 0.0;
    double ref_sq = 0.0;
    for (int c = 0; c < 4; ++c) {
      for (std::size_t i = begin; i < end; ++i) {
        const double d = test.channels[c][i] - ref.channels[c][i];
        diff_sq += d * d;
        ref_sq += ref.channels[c][i] * ref.channels[c][i];
      }
    }
    if (ref_sq == 0.0) {
      if (diff_sq != 0.0) return std::numeric_limits<double>::infinity();
      continue;
    }
    worst = std::max(worst, std::sqrt(diff_sq / ref_sq));
  }
  return worst;
}

inline std::vector<bool> active_mask(const LabelTrack& labels) {
  std::vector<bool> mask(labels.frames.size());
  for (std::size_t f = 0; f < labels.frames.size(); ++f) mask[f] = !labels.frames[f].empty();
  return mask;
}

/// Largest angular distance between corresponding entries, in degrees.
/// Mismatched structure returns infinity.
inline double max_label_distance_deg(const LabelTrack& a, const LabelTrack& b) {
  if (a.frames.size() != b.frames.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (std::size_t f = 0; f < a.frames.size(); ++f) {
    if (a.frames[f].size() != b.frames[f].size()) {
      return std::numeric_limits<double>::infinity();
    }
    for (std::size_t k = 0; k < a.frames[f].size(); ++k) {
      if (a.frames[f][k].source_id != b.frames[f][k].source_id) {
        return std::numeric_limits<double>::infinity();
      }
      worst = std::max(
          worst, rad_to_deg(angular_distance(a.frames[f][k].direction, b.frames[f][k].direction)));
    }
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Checks.

/// All 16 patterns on random scenes: the transformed signal must equal the
/// scene re-encoded at the mapped labels, frame by frame.
inline CheckResult check_patterns_oracle(const Options& opts) {
  Rng rng(splitmix64(opts.seed ^ 0x165061747465726Eull));
  const auto length = static_cast<std::size_t>(opts.scene_seconds * opts.sample_rate);
  double worst_rms = 0.0;
  double worst_label = 0.0;

  const auto run_scene = [&](int n_sources) {
    const auto sources = random_scene(rng, n_sources, opts.sample_rate, length, opts.frame_hop);
    const auto [sig, labels] = encode_scene(sources, opts.sample_rate, length, opts.frame_hop);
    for (const PatternId p : all_patterns()) {
      const auto [aug_sig, aug_labels] = apply_pattern(sig, labels, p);
      const auto mapped =
          map_source_directions(sources, [&](Direction d) { return pattern_label_map(p, d); });
      const auto [ref_sig, ref_labels] =
          encode_scene(mapped, opts.sample_rate, length, opts.frame_hop);
      worst_rms = std::max(worst_rms, max_frame_relative_rms(aug_sig, ref_sig, opts.frame_hop));
      worst_label = std::max(worst_label, max_label_distance_deg(aug_labels, ref_labels));
    }
  };
  for (int i = 0; i < opts.patterns_single_scenes; ++i) run_scene(1);
  for (int i = 0; i < opts.patterns_multi_scenes; ++i) run_scene(3);

  CheckResult r;
  r.name = "patterns16 oracle equivalence";
  r.pass = worst_rms <= 1e-6 && worst_label <= 1e-9;
  r.detail = "max frame rel RMS " + format_double(worst_rms) +
             " (bound 1e-6), max label drift " + format_double(worst_label) + " deg";
  return r;
}

/// Labels First on single-source scenes with dataset limits +-40 deg: oracle
/// equivalence on active frames and hard elevation bounds on the output.
inline CheckResult check_labels_first_oracle(const Options& opts) {
  Rng rng(splitmix64(opts.seed ^ 0x6C6162656C736673ull));
  const auto length = static_cast<std::size_t>(opts.scene_seconds * opts.sample_rate);
  const double lim = deg_to_rad(40.0);
  ElevationRangePolicy policy{ElevationRangeMode::kLabelRange, -lim, lim};

  double worst_rms = 0.0;
  double worst_label = 0.0;
  bool bounds_ok = true;
  for (int i = 0; i < opts.labels_first_scenes; ++i) {
    const auto sources =
        random_scene(rng, 1, opts.sample_rate, length, opts.frame_hop, -40.0, 40.0);
    const auto [sig, labels] = encode_scene(sources, opts.sample_rate, length, opts.frame_hop);
    const auto res = apply_labels_first(sig, labels, policy, rng);

    for (const auto& frame : res.labels.frames) {
      for (const auto& e : frame) {
        if (e.direction.elevation < -lim || e.direction.elevation > lim) bounds_ok = false;
      }
    }

    const auto mapped = map_source_directions(sources, [&](Direction d) {
      return canonical_direction(d.azimuth + res.draw.alpha, d.elevation + res.draw.beta);
    });
    const auto [ref_sig, ref_labels] =
        encode_scene(mapped, opts.sample_rate, length, opts.frame_hop);
    const auto mask = active_mask(labels);
    worst_rms =
        std::max(worst_rms, max_frame_relative_rms(res.signal, ref_sig, opts.frame_hop, &mask));
    worst_label = std::max(worst_label, max_label_distance_deg(res.labels, ref_labels));
  }

  CheckResult r;
  r.name = "labels-first oracle equivalence";
  r.pass = worst_rms <= 1e-6 && worst_label <= 1e-9 && bounds_ok;
  r.detail = "max active-frame rel RMS " + format_double(worst_rms) +
             " (bound 1e-6), max label drift " + format_double(worst_label) +
             " deg, elevations " + (bounds_ok ? "inside" : "OUTSIDE") + " [-40, 40] deg";
  return r;
}

/// Channels First on 1-3 source scenes with seeded random matrices: oracle
/// equivalence plus orthonormality of every generated matrix.
inline CheckResult check_channels_first_oracle(const Options& opts) {
  Rng rng(splitmix64(opts.seed ^ 0x6368616E6E656C73ull));
  const auto length = static_cast<std::size_t>(opts.scene_seconds * opts.sample_rate);
  double worst_rms = 0.0;
  double worst_label = 0.0;
  double worst_ortho = 0.0;
  double worst_det = 0.0;
  for (int i = 0; i < opts.channels_first_scenes; ++i) {
    const int n_sources = 1 + static_cast<int>(rng.below(3));
    const auto sources = random_scene(rng, n_sources, opts.sample_rate, length, opts.frame_hop);
    const auto [sig, labels] = encode_scene(sources, opts.sample_rate, length, opts.frame_hop);
    const auto res = apply_channels_first(sig, labels, rng);

    worst_ortho = std::max(worst_ortho, orthonormality_error(res.rotation));
    worst_det = std::max(worst_det, std::abs(std::abs(res.rotation.det()) - 1.0));

    const auto mapped = map_source_directions(sources, [&](Direction d) {
      return to_spherical(res.rotation * to_cartesian(d));
    });
    const auto [ref_sig, ref_labels] =
        encode_scene(mapped, opts.sample_rate, length, opts.frame_hop);
    worst_rms = std::max(worst_rms, max_frame_relative_rms(res.signal, ref_sig, opts.frame_hop));
    worst_label = std::max(worst_label, max_label_distance_deg(res.labels, ref_labels));
  }

  CheckResult r;
  r.name = "channels-first oracle equivalence";
  r.pass = worst_rms <= 1e-6 && worst_label <= 1e-9 && worst_ortho <= 1e-10 && worst_det <= 1e-10;
  r.detail = "max frame rel RMS " + format_double(worst_rms) + " (bound 1e-6), max label drift " +
             format_double(worst_label) + " deg, max |RR^T-I| " + format_double(worst_ortho) +
             ", max ||det|-1| " + format_double(worst_det) + " (bounds 1e-10)";
  return r;
}

/// The sixteen channel matrices form a group of order 16: all distinct,
/// closed under product, identity present, every element has an inverse.
/// Entries are -1/0/+1 so all comparisons are exact.
inline CheckResult check_pattern_group(const Options&) {
  const auto patterns = all_patterns();
  std::vector<Mat3> mats;
  mats.reserve(patterns.size());
  for (const auto p : patterns) mats.push_back(pattern_channel_matrix(p));

  bool distinct = true;
  for (std::size_t i = 0; i < mats.size(); ++i) {
    for (std::size_t j = i + 1; j < mats.size(); ++j) {
      if (mats[i] == mats[j]) distinct = false;
    }
  }

  const auto find = [&](const Mat3& m) {
    for (std::size_t k = 0; k < mats.size(); ++k) {
      if (mats[k] == m) return static_cast<int>(k);
    }
    return -1;
  };

  int products_closed = 0;
  bool closure = true;
  for (const auto& a : mats) {
    for (const auto& b : mats) {
      if (find(a * b) >= 0) ++products_closed;
      else closure = false;
    }
  }

  const bool identity_present = find(Mat3::identity()) >= 0;
  bool inverses = true;
  for (const auto& m : mats) {
    // Orthonormal with integer entries: the inverse is the transpose.
    if (find(m.transposed()) < 0 || !(m * m.transposed() == Mat3::identity())) inverses = false;
  }

  CheckResult r;
  r.name = "pattern matrices form a group of order 16";
  r.pass = distinct && closure && identity_present && inverses;
  r.detail = std::to_string(products_closed) + "/256 products closed, identity " +
             (identity_present ? "present" : "MISSING") + ", inverses " +
             (inverses ? "present" : "MISSING") + ", elements " +
             (distinct ? "distinct" : "NOT distinct");
  return r;
}

/// Estimator equivariance: after any method's channel transform the
/// intensity-vector estimate tracks the transformed labels frame by frame,
/// and the DOA-error metric is unchanged by augmentation.
inline CheckResult check_estimator_equivariance(const Options& opts) {
  Rng rng(splitmix64(opts.seed ^ 0x657175697661726Eull));
  const auto length = static_cast<std::size_t>(opts.scene_seconds * opts.sample_rate);
  const double lim = deg_to_rad(40.0);

  double worst_frame_deg = 0.0;
  double worst_metric_drift = 0.0;

  const auto frame_match_deg = [&](const std::vector<FrameEstimate>& est,
                                   const LabelTrack& labels) {
    double worst = 0.0;
    for (const auto& e : est) {
      if (!e.active || e.frame_index >= labels.frames.size()) continue;
      const auto& frame = labels.frames[e.frame_index];
      if (frame.empty()) continue;
      worst = std::max(worst,
                       rad_to_deg(angular_distance(e.direction, frame.front().direction)));
    }
    return worst;
  };

  for (int i = 0; i < opts.estimator_scenes; ++i) {
    const auto sources =
        random_scene(rng, 1, opts.sample_rate, length, opts.frame_hop, -40.0, 40.0);
    const auto [sig, labels] = encode_scene(sources, opts.sample_rate, length, opts.frame_hop);
    const auto est_orig = estimate_doa(sig, opts.frame_hop);
    const double er_orig = doa_error_deg(est_orig, labels);

    const auto consider = [&](const FoaSignal& aug_sig, const LabelTrack& aug_labels) {
      const auto est = estimate_doa(aug_sig, opts.frame_hop);
      worst_frame_deg = std::max(worst_frame_deg, frame_match_deg(est, aug_labels));
      worst_metric_drift =
          std::max(worst_metric_drift, std::abs(doa_error_deg(est, aug_labels) - er_orig));
    };

    const auto [p_sig, p_labels] = apply_pattern(sig, labels, random_pattern(rng));
    consider(p_sig, p_labels);

    const auto lf =
        apply_labels_first(sig, labels, {ElevationRangeMode::kLabelRange, -lim, lim}, rng);
    consider(lf.signal, lf.labels);

    const auto cf = apply_channels_first(sig, labels, rng);
    consider(cf.signal, cf.labels);
  }

  CheckResult r;
  r.name = "estimator equivariance under augmentation";
  r.pass = worst_frame_deg <= 0.5 && worst_metric_drift <= 0.2;
  r.detail = "max per-frame deviation " + format_double(worst_frame_deg) +
             " deg (bound 0.5), max DOA-error drift " + format_double(worst_metric_drift) +
             " deg (bound 0.2)";
  return r;
}

/// Patterns keep a 10-degree azimuth grid and the [-40, 40] elevation range:
/// elevation flips are bit-exact, azimuth stays on-grid to 1e-9 degrees.
inline CheckResult check_domain_preservation(const Options& opts) {
  Rng rng(splitmix64(opts.seed ^ 0x646F6D61696E3130ull));
  double worst_grid_dev_deg = 0.0;
  bool elevation_ok = true;

  for (int rep = 0; rep < 200; ++rep) {
    const double az_deg = -180.0 + 10.0 * static_cast<double>(rng.below(36));
    const double el_deg = -40.0 + 10.0 * static_cast<double>(rng.below(9));
    const Direction d = direction_deg(az_deg, el_deg);
    for (const PatternId p : all_patterns()) {
      const Direction out = pattern_label_map(p, d);
      const double out_az_deg = rad_to_deg(out.azimuth);
      const double nearest = 10.0 * std::round(out_az_deg / 10.0);
      worst_grid_dev_deg = std::max(worst_grid_dev_deg, std::abs(out_az_deg - nearest));
      const double out_el_deg = rad_to_deg(out.elevation);
      if (std::abs(out_el_deg) > 40.0 ||
          (out.elevation != d.elevation && out.elevation != -d.elevation)) {
        elevation_ok = false;
      }
    }
  }

  CheckResult r;
  r.name = "patterns preserve the label domain";
  r.pass = worst_grid_dev_deg <= 1e-9 && elevation_ok;
  r.detail = "max azimuth grid deviation " + format_double(worst_grid_dev_deg) +
             " deg (bound 1e-9), elevation " + (elevation_ok ? "exact" : "NOT exact");
  return r;
}

/// wrap_azimuth against the literal formula (a + pi) mod 2pi - pi with a
/// nonnegative modulus, over a dense sweep.
inline CheckResult check_wrap_formula(const Options&) {
  double worst = 0.0;
  bool range_ok = true;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    const double a = -8.0 * kPi + 16.0 * kPi * static_cast<double>(i) / (n - 1);
    double ref = std::fmod(a + kPi, kTwoPi);
    if (ref < 0.0) ref += kTwoPi;
    ref -= kPi;
    const double got = wrap_azimuth(a);
    worst = std::max(worst, std::abs(got - ref));
    if (!(got >= -kPi && got < kPi)) range_ok = false;
  }
  CheckResult r;
  r.name = "azimuth wrap matches the mod-2pi formula";
  r.pass = worst <= 1e-12 && range_ok;
  r.detail = "max deviation " + format_double(worst) + " rad over " + std::to_string(n) +
             " points (bound 1e-12), range " + (range_ok ? "[-pi, pi)" : "VIOLATED");
  return r;
}

inline std::vector<CheckResult> run_all(const Options& opts) {
  return {check_patterns_oracle(opts),      check_labels_first_oracle(opts),
          check_channels_first_oracle(opts), check_pattern_group(opts),
          check_estimator_equivariance(opts), check_domain_preservation(opts),
          check_wrap_formula(opts)};
}

}  // namespace foaaug::verify
