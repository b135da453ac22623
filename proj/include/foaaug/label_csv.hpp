//
//  label_csv.hpp
//  foaaug
//
//  Frame-based label CSV: one row per active source per frame, degrees in
//  the file, radians in memory. Inactive frames are simply absent. A leading
//  comment line carries the frame hop, sample rate and frame count so a
//  track with trailing silence round-trips exactly.
//
//  Distributed under the Apache License, Version 2.0.
//  See the accompanying file LICENSE or http://www.apache.org/licenses/LICENSE-2.0.html
//

#pragma once

#include <algorithm>
#include <climits>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "foaaug/angles.hpp"
#include "foaaug/error.hpp"
#include "foaaug/signal.hpp"

namespace foaaug {

inline constexpr const char* kLabelCsvHeader = "frame,source_id,azimuth_deg,elevation_deg";

/// Serialize a label track. Angles are written with six decimal places;
/// rows appear in frame order, sources in their in-frame order.
inline void write_labels_csv(const LabelTrack& track, const std::filesystem::path& path,
                             int sample_rate = 32000) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw FoaError(Errc::kIoError, "cannot create '" + path.string() + "'");

  char buf[160];
  std::snprintf(buf, sizeof buf, "# frame_hop_ms=%.6f,sample_rate=%d,n_frames=%zu\n",
                track.frame_hop * 1000.0, sample_rate, track.frames.size());
  os << buf << kLabelCsvHeader << '\n';
  for (std::size_t f = 0; f < track.frames.size(); ++f) {
    for (const auto& entry : track.frames[f]) {
      std::snprintf(buf, sizeof buf, "%zu,%d,%.6f,%.6f\n", f, entry.source_id,
                    rad_to_deg(entry.direction.azimuth),
                    rad_to_deg(entry.direction.elevation));
      os << buf;
    }
  }
  if (!os) throw FoaError(Errc::kIoError, "short write to '" + path.string() + "'");
}

namespace csv_detail {

inline std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

inline std::string strip(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Whole-field numeric parses: trailing junk ("3x") is a parse failure, not a 3.
inline bool parse_ll(const std::string& s, long long& out) {
  std::size_t used = 0;
  try {
    out = std::stoll(s, &used);
  } catch (const std::exception&) {
    return false;
  }
  return !s.empty() && used == s.size();
}

inline bool parse_int(const std::string& s, int& out) {
  long long v = 0;
  if (!parse_ll(s, v) || v < INT_MIN || v > INT_MAX) return false;
  out = static_cast<int>(v);
  return true;
}

inline bool parse_double(const std::string& s, double& out) {
  std::size_t used = 0;
  try {
    out = std::stod(s, &used);
  } catch (const std::exception&) {
    return false;
  }
  return !s.empty() && used == s.size();
}

}  // namespace csv_detail

/// Parse a label CSV. The comment line is optional; when absent, the frame
/// hop defaults to `default_frame_hop` and the track length to the last
/// row's frame + 1. Azimuth must lie in [-180, 180] degrees (exactly +180
/// wraps to -180, since six-decimal serialization can round up to it) and
/// elevation in [-90, 90]; anything else raises kRangeError with the line
/// number. Structural problems raise kParseError with the line number.
inline LabelTrack read_labels_csv(const std::filesystem::path& path,
                                  double default_frame_hop = 0.02,
                                  int* sample_rate_out = nullptr) {
  std::ifstream in(path);
  if (!in) throw FoaError(Errc::kIoError, "cannot open '" + path.string() + "'");
  const std::string name = path.filename().string();

  LabelTrack track;
  track.frame_hop = default_frame_hop;
  std::size_t declared_frames = 0;

  auto fail = [&](Errc code, std::size_t line_no, const std::string& what) {
    throw FoaError(code, name + ":" + std::to_string(line_no) + ": " + what);
  };

  std::string line;
  std::size_t line_no = 0;
  bool seen_header = false;
  long long prev_frame = -1;

  while (std::getline(in, line)) {
    ++line_no;
    const std::string s = csv_detail::strip(line);
    if (s.empty()) continue;
    if (s[0] == '#') {
      if (seen_header) fail(Errc::kParseError, line_no, "comment after header");
      for (const auto& field : csv_detail::split(s.substr(1), ',')) {
        const auto eq = field.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = csv_detail::strip(field.substr(0, eq));
        const std::string value = csv_detail::strip(field.substr(eq + 1));
        bool ok = true;
        if (key == "frame_hop_ms") {
          double ms = 0.0;
          ok = csv_detail::parse_double(value, ms);
          track.frame_hop = ms / 1000.0;
        } else if (key == "sample_rate") {
          int rate = 0;
          ok = csv_detail::parse_int(value, rate);
          if (ok && sample_rate_out) *sample_rate_out = rate;
        } else if (key == "n_frames") {
          long long n = 0;
          ok = csv_detail::parse_ll(value, n) && n >= 0;
          declared_frames = ok ? static_cast<std::size_t>(n) : 0;
        }
        if (!ok) fail(Errc::kParseError, line_no, "bad sidecar field '" + field + "'");
      }
      if (track.frame_hop <= 0.0) fail(Errc::kParseError, line_no, "frame hop must be positive");
      continue;
    }
    if (!seen_header) {
      if (s != kLabelCsvHeader) fail(Errc::kParseError, line_no, "unexpected header '" + s + "'");
      seen_header = true;
      continue;
    }

    const auto fields = csv_detail::split(s, ',');
    if (fields.size() != 4) fail(Errc::kParseError, line_no, "expected 4 fields");
    long long frame = 0;
    int source_id = 0;
    double az_deg = 0.0;
    double el_deg = 0.0;
    if (!csv_detail::parse_ll(csv_detail::strip(fields[0]), frame) ||
        !csv_detail::parse_int(csv_detail::strip(fields[1]), source_id) ||
        !csv_detail::parse_double(csv_detail::strip(fields[2]), az_deg) ||
        !csv_detail::parse_double(csv_detail::strip(fields[3]), el_deg)) {
      fail(Errc::kParseError, line_no, "malformed row '" + s + "'");
    }
    if (frame < 0) fail(Errc::kParseError, line_no, "negative frame index");
    if (frame < prev_frame) fail(Errc::kParseError, line_no, "frame indices must be nondecreasing");
    if (az_deg < -180.0 || az_deg > 180.0) {
      fail(Errc::kRangeError, line_no, "azimuth " + fields[2] + " outside [-180, 180)");
    }
    if (az_deg == 180.0) az_deg = -180.0;
    if (el_deg < -90.0 || el_deg > 90.0) {
      fail(Errc::kRangeError, line_no, "elevation " + fields[3] + " outside [-90, 90]");
    }
    const auto f = static_cast<std::size_t>(frame);
    if (track.frames.size() <= f) track.frames.resize(f + 1);
    for (const auto& e : track.frames[f]) {
      if (e.source_id == source_id) {
        fail(Errc::kParseError, line_no,
             "duplicate source id " + fields[1] + " in frame " + fields[0]);
      }
    }
    track.frames[f].push_back({source_id, direction_deg(az_deg, el_deg)});
    prev_frame = frame;
  }
  if (!seen_header) {
    throw FoaError(Errc::kParseError, name + ": missing header line");
  }
  if (track.frames.size() < declared_frames) track.frames.resize(declared_frames);
  return track;
}

}  // namespace foaaug
