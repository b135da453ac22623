//
//  scene.hpp
//  foaaug
//
//  Synthetic FOA scene encoder: sums point sources weighted by their
//  steering vectors. Serves as ground truth for every augmentation method
//  and as the fixture generator for tests and the CLI.
//
//  Distributed under the Apache License, Version 2.0.
//  See the accompanying file LICENSE or http://www.apache.org/licenses/LICENSE-2.0.html
//

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "foaaug/angles.hpp"
#include "foaaug/error.hpp"
#include "foaaug/rng.hpp"
#include "foaaug/signal.hpp"
#include "foaaug/steering.hpp"

namespace foaaug {

/// A source contributes to the label track in every frame where its RMS
/// exceeds this fraction of its peak amplitude.
inline constexpr double kActivityRmsFraction = 1e-6;

/// One mono source placed in a scene. The trajectory is indexed by scene
/// frame and must cover every frame in which the source has a nonzero
/// sample; entries beyond the source's span are ignored.
struct SourceTrack {
  int source_id = 0;
  std::vector<double> samples;
  std::vector<Direction> trajectory;
  std::size_t onset = 0;  // sample offset within the scene
};

/// Encode N sources into a four-channel buffer: each channel at sample t is
/// (1/N) * sum_n gain_c(direction of source n in t's frame) * s_n(t), with
/// gains held constant within each label frame. N is the total number of
/// sources in the scene, not the per-frame active count, so overall scale
/// (but nothing else) depends on the scene size. An empty scene encodes to
/// silence with all frames inactive.
inline std::pair<FoaSignal, LabelTrack> encode_scene(
    const std::vector<SourceTrack>& sources, int sample_rate, std::size_t length,
    double frame_hop) {
  const std::size_t hop = hop_samples(frame_hop, sample_rate);
  const std::size_t n_frames = frame_count_for(length, hop);

  FoaSignal sig = FoaSignal::silence(sample_rate, length);
  LabelTrack labels;
  labels.frame_hop = frame_hop;
  labels.frames.assign(n_frames, {});
  if (sources.empty() || length == 0) return {std::move(sig), std::move(labels)};

  const double scale = 1.0 / static_cast<double>(sources.size());

  for (const auto& src : sources) {
    double peak = 0.0;
    for (double s : src.samples) peak = std::max(peak, std::abs(s));

    // Frame-level RMS accumulators for the activity decision.
    std::vector<double> frame_sumsq(n_frames, 0.0);
    std::vector<std::size_t> frame_count(n_frames, 0);

    for (std::size_t k = 0; k < src.samples.size(); ++k) {
      const std::size_t t = src.onset + k;
      if (t >= length) break;
      const std::size_t f = t / hop;
      const double s = src.samples[k];
      if (f >= src.trajectory.size()) {
        if (s != 0.0) {
          throw FoaError(Errc::kInvalidScene,
                         "source " + std::to_string(src.source_id) +
                             " has a nonzero sample in frame " + std::to_string(f) +
                             " beyond its trajectory");
        }
        continue;
      }
      const SteeringVector g = steering_vector(src.trajectory[f]);
      sig.channels[kChanW][t] += scale * g.w * s;
      sig.channels[kChanY][t] += scale * g.y * s;
      sig.channels[kChanZ][t] += scale * g.z * s;
      sig.channels[kChanX][t] += scale * g.x * s;
      frame_sumsq[f] += s * s;
      frame_count[f] += 1;
    }

    if (peak <= 0.0) continue;
    for (std::size_t f = 0; f < n_frames; ++f) {
      if (frame_count[f] == 0) continue;
      const double rms = std::sqrt(frame_sumsq[f] / static_cast<double>(frame_count[f]));
      if (rms > kActivityRmsFraction * peak && f < src.trajectory.size()) {
        labels.frames[f].push_back({src.source_id, src.trajectory[f]});
      }
    }
  }
  return {std::move(sig), std::move(labels)};
}

enum class TestSourceKind { kWhiteNoise, kSine, kPulseTrain };

inline const char* test_source_kind_name(TestSourceKind k) {
  switch (k) {
    case TestSourceKind::kWhiteNoise: return "white_noise";
    case TestSourceKind::kSine: return "sine";
    case TestSourceKind::kPulseTrain: return "pulse_train";
  }
  return "?";
}

inline TestSourceKind test_source_kind_from_name(const std::string& name) {
  if (name == "white_noise") return TestSourceKind::kWhiteNoise;
  if (name == "sine") return TestSourceKind::kSine;
  if (name == "pulse_train") return TestSourceKind::kPulseTrain;
  throw FoaError(Errc::kParseError, "unknown source kind '" + name + "'");
}

/// Deterministic mono test material, peak amplitude <= 1. The sine frequency
/// and the pulse period are fixed knobs rather than per-source parameters;
/// fixtures that need variety combine kinds and onsets instead.
inline std::vector<double> gen_test_source(TestSourceKind kind, std::size_t length,
                                           int sample_rate, Rng& rng,
                                           double sine_hz = 440.0,
                                           double pulse_period_s = 0.1) {
  std::vector<double> s(length, 0.0);
  switch (kind) {
    case TestSourceKind::kWhiteNoise:
      for (auto& v : s) v = rng.uniform(-1.0, 1.0);
      break;
    case TestSourceKind::kSine: {
      const double w = kTwoPi * sine_hz / sample_rate;
      for (std::size_t i = 0; i < length; ++i) s[i] = std::sin(w * static_cast<double>(i));
      break;
    }
    case TestSourceKind::kPulseTrain: {
      const std::size_t period = hop_samples(pulse_period_s, sample_rate);
      for (std::size_t i = 0; i < length; i += period) s[i] = 1.0;
      break;
    }
  }
  return s;
}

/// One line of a scenario file: a source kind, its time span, and azimuth/
/// elevation waypoints (degrees, scene-absolute seconds).
struct ScenarioWaypoint {
  double time_s = 0.0;
  double az_deg = 0.0;
  double el_deg = 0.0;
};

struct ScenarioSource {
  int id = 0;
  TestSourceKind kind = TestSourceKind::kWhiteNoise;
  double onset_s = 0.0;
  double duration_s = 0.0;
  std::vector<ScenarioWaypoint> path;
};

/// Parse the plain-text scenario format: one source per line,
///   id kind onset_s duration_s time:az_deg:el_deg [time:az_deg:el_deg ...]
/// Blank lines and lines starting with '#' are skipped.
inline std::vector<ScenarioSource> parse_scenario(std::istream& in) {
  std::vector<ScenarioSource> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;

    std::istringstream ls(line);
    ScenarioSource src;
    std::string kind;
    if (!(ls >> src.id >> kind >> src.onset_s >> src.duration_s)) {
      throw FoaError(Errc::kParseError,
                     "scenario line " + std::to_string(line_no) +
                         ": expected 'id kind onset duration waypoints...'");
    }
    src.kind = test_source_kind_from_name(kind);
    std::string wp;
    while (ls >> wp) {
      ScenarioWaypoint w;
      int consumed = 0;
      if (std::sscanf(wp.c_str(), "%lf:%lf:%lf%n", &w.time_s, &w.az_deg, &w.el_deg,
                      &consumed) != 3 ||
          static_cast<std::size_t>(consumed) != wp.size()) {
        throw FoaError(Errc::kParseError, "scenario line " + std::to_string(line_no) +
                                              ": bad waypoint '" + wp + "'");
      }
      src.path.push_back(w);
    }
    if (src.path.empty()) {
      throw FoaError(Errc::kParseError, "scenario line " + std::to_string(line_no) +
                                            ": source needs at least one waypoint");
    }
    out.push_back(std::move(src));
  }
  return out;
}

inline std::vector<ScenarioSource> load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FoaError(Errc::kIoError, "cannot open scenario file '" + path + "'");
  return parse_scenario(in);
}

/// Direction of a scenario source at an absolute scene time: waypoints are
/// interpolated linearly, azimuth along the shorter arc, and clamped at the
/// ends of the path.
inline Direction scenario_direction_at(const ScenarioSource& src, double time_s) {
  const auto& p = src.path;
  if (time_s <= p.front().time_s) return direction_deg(p.front().az_deg, p.front().el_deg);
  if (time_s >= p.back().time_s) return direction_deg(p.back().az_deg, p.back().el_deg);
  std::size_t hi = 1;
  while (p[hi].time_s < time_s) ++hi;
  const auto& a = p[hi - 1];
  const auto& b = p[hi];
  const double span = b.time_s - a.time_s;
  const double u = span > 0.0 ? (time_s - a.time_s) / span : 1.0;
  const double az_a = deg_to_rad(a.az_deg);
  const double daz = wrap_azimuth(deg_to_rad(b.az_deg) - az_a);
  const double el = deg_to_rad(a.el_deg) + u * (deg_to_rad(b.el_deg) - deg_to_rad(a.el_deg));
  return {wrap_azimuth(az_a + u * daz), el};
}

/// Turn scenario descriptions into concrete source tracks for encode_scene.
inline std::vector<SourceTrack> realize_scenario(const std::vector<ScenarioSource>& scenario,
                                                 int sample_rate, std::size_t length,
                                                 double frame_hop, Rng& rng) {
  const std::size_t hop = hop_samples(frame_hop, sample_rate);
  const std::size_t n_frames = frame_count_for(length, hop);
  std::vector<SourceTrack> out;
  out.reserve(scenario.size());
  for (const auto& s : scenario) {
    SourceTrack t;
    t.source_id = s.id;
    t.onset = static_cast<std::size_t>(std::llround(std::max(0.0, s.onset_s) * sample_rate));
    const auto n = static_cast<std::size_t>(std::llround(std::max(0.0, s.duration_s) * sample_rate));
    t.samples = gen_test_source(s.kind, n, sample_rate, rng);
    t.trajectory.reserve(n_frames);
    for (std::size_t f = 0; f < n_frames; ++f) {
      t.trajectory.push_back(scenario_direction_at(s, static_cast<double>(f) * frame_hop));
    }
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace foaaug
