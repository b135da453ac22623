//
//  pipeline.hpp
//  foaaug
//
//  Batch augmentation over a directory of (wav, csv) pairs, with a JSON
//  manifest recording exactly what happened to every file. Each file gets
//  its own RNG seeded from the global seed and the file's stem, so results
//  do not depend on processing order and parallel runs would agree with
//  serial ones.
//
//  Distributed under the Apache License, Version 2.0.
//  See the accompanying file LICENSE or http://www.apache.org/licenses/LICENSE-2.0.html
//

#pragma once

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "foaaug/channels_first.hpp"
#include "foaaug/error.hpp"
#include "foaaug/label_csv.hpp"
#include "foaaug/labels_first.hpp"
#include "foaaug/patterns16.hpp"
#include "foaaug/rng.hpp"
#include "foaaug/wav.hpp"

namespace foaaug {

enum class AugmentMethod { kPatterns16, kLabelsFirst, kChannelsFirst };

inline const char* augment_method_name(AugmentMethod m) {
  switch (m) {
    case AugmentMethod::kPatterns16: return "patterns16";
    case AugmentMethod::kLabelsFirst: return "labels_first";
    case AugmentMethod::kChannelsFirst: return "channels_first";
  }
  return "?";
}

inline AugmentMethod augment_method_from_name(const std::string& name) {
  if (name == "patterns16") return AugmentMethod::kPatterns16;
  if (name == "labels_first") return AugmentMethod::kLabelsFirst;
  if (name == "channels_first") return AugmentMethod::kChannelsFirst;
  throw FoaError(Errc::kParseError, "unknown method '" + name + "'");
}

struct AugmentConfig {
  AugmentMethod method = AugmentMethod::kPatterns16;
  double probability = 0.5;  // fraction of inputs to augment
  std::uint64_t seed = 0;
  ElevationRangePolicy elevation_policy;  // labels-first only
  std::filesystem::path input_dir;
  std::filesystem::path output_dir;
  std::filesystem::path manifest_path;  // default: <output_dir>/manifest.json
  double default_frame_hop = 0.02;      // for label files without a sidecar
};

/// Row-major, 17 significant digits, space separated: enough to reconstruct
/// the matrix bit-exactly from the manifest.
inline std::string rotation_to_string(const Mat3& r) {
  std::string out;
  char buf[32];
  for (int i = 0; i < 9; ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", r.m[i]);
    if (i) out += ' ';
    out += buf;
  }
  return out;
}

inline Mat3 rotation_from_string(const std::string& s) {
  Mat3 r{};
  std::istringstream is(s);
  for (int i = 0; i < 9; ++i) {
    if (!(is >> r.m[i])) throw FoaError(Errc::kParseError, "bad rotation string '" + s + "'");
  }
  return r;
}

/// The order-independent per-file augmentation decision: the first uniform
/// draw of the file's own RNG against the configured probability.
inline bool file_selected(std::uint64_t global_seed, std::string_view stem,
                          double probability) {
  Rng rng(per_file_seed(global_seed, stem));
  return rng.uniform() < probability;
}

struct AugmentOutcome {
  std::size_t files_processed = 0;
  std::size_t files_augmented = 0;
  std::filesystem::path manifest_path;
};

/// Process every (wav, csv) stem pair under config.input_dir: copy the pair
/// through byte-identically, and with the configured probability also write
/// an augmented pair alongside it with an "_aug1" stem suffix. The manifest
/// lists every input with the method applied ("none" when skipped), the
/// per-file seed, the method's draw (pattern id / alpha, beta / rotation)
/// and the files written.
inline AugmentOutcome run_augment(const AugmentConfig& config) {
  namespace fs = std::filesystem;
  if (!(config.probability >= 0.0 && config.probability <= 1.0)) {
    throw FoaError(Errc::kParseError, "probability must lie in [0, 1]");
  }
  if (!(config.default_frame_hop > 0.0)) {
    throw FoaError(Errc::kParseError, "frame hop must be positive");
  }
  if (config.elevation_policy.range_min > config.elevation_policy.range_max) {
    throw FoaError(Errc::kParseError, "elevation range is inverted (min > max)");
  }
  if (!fs::is_directory(config.input_dir)) {
    throw FoaError(Errc::kIoError, "input directory '" + config.input_dir.string() +
                                       "' does not exist");
  }
  fs::create_directories(config.output_dir);

  std::vector<fs::path> wavs;
  for (const auto& e : fs::directory_iterator(config.input_dir)) {
    if (e.is_regular_file() && e.path().extension() == ".wav") wavs.push_back(e.path());
  }
  std::sort(wavs.begin(), wavs.end());

  nlohmann::ordered_json manifest;
  manifest["method"] = augment_method_name(config.method);
  manifest["probability"] = config.probability;
  manifest["seed"] = config.seed;
  if (config.method == AugmentMethod::kLabelsFirst) {
    manifest["elevation_mode"] =
        config.elevation_policy.mode == ElevationRangeMode::kLabelRange ? "label-range"
                                                                        : "fixed-range";
    manifest["elevation_min_deg"] = rad_to_deg(config.elevation_policy.range_min);
    manifest["elevation_max_deg"] = rad_to_deg(config.elevation_policy.range_max);
  }
  manifest["files"] = nlohmann::ordered_json::array();

  AugmentOutcome outcome;
  std::set<std::string> written;
  const auto claim = [&written](const std::string& name) {
    if (!written.insert(name).second) {
      throw FoaError(Errc::kIoError,
                     "output name collision on '" + name +
                         "' (an input stem ends in an _augN suffix?)");
    }
    return name;
  };
  for (const auto& wav_path : wavs) {
    const std::string stem = wav_path.stem().string();
    const fs::path csv_path = wav_path.parent_path() / (stem + ".csv");
    if (!fs::exists(csv_path)) {
      throw FoaError(Errc::kIoError, "no label file for '" + wav_path.filename().string() +
                                         "' (expected " + csv_path.filename().string() + ")");
    }

    fs::copy_file(wav_path, config.output_dir / wav_path.filename(),
                  fs::copy_options::overwrite_existing);
    fs::copy_file(csv_path, config.output_dir / csv_path.filename(),
                  fs::copy_options::overwrite_existing);

    const std::uint64_t seed = per_file_seed(config.seed, stem);
    Rng rng(seed);
    const bool selected = rng.uniform() < config.probability;

    nlohmann::ordered_json entry;
    entry["input"] = wav_path.filename().string();
    entry["labels"] = csv_path.filename().string();
    entry["seed"] = seed;
    entry["outputs"] = {claim(wav_path.filename().string()),
                        claim(csv_path.filename().string())};

    if (!selected) {
      entry["method"] = "none";
      manifest["files"].push_back(std::move(entry));
      ++outcome.files_processed;
      continue;
    }

    const FoaSignal sig = read_foa_wav(wav_path);
    const LabelTrack labels = read_labels_csv(csv_path, config.default_frame_hop);
    entry["method"] = augment_method_name(config.method);

    FoaSignal aug_sig;
    LabelTrack aug_labels;
    switch (config.method) {
      case AugmentMethod::kPatterns16: {
        const PatternId p = random_pattern(rng);
        auto [s, l] = apply_pattern(sig, labels, p);
        aug_sig = std::move(s);
        aug_labels = std::move(l);
        entry["pattern"] = pattern_to_string(p);
        break;
      }
      case AugmentMethod::kLabelsFirst: {
        auto res = apply_labels_first(sig, labels, config.elevation_policy, rng);
        aug_sig = std::move(res.signal);
        aug_labels = std::move(res.labels);
        entry["alpha"] = res.draw.alpha;
        entry["beta"] = res.draw.beta;
        break;
      }
      case AugmentMethod::kChannelsFirst: {
        auto res = apply_channels_first(sig, labels, rng);
        aug_sig = std::move(res.signal);
        aug_labels = std::move(res.labels);
        entry["rotation"] = rotation_to_string(res.rotation);
        break;
      }
    }

    const std::string aug_stem = stem + "_aug1";
    const fs::path aug_wav = config.output_dir / (aug_stem + ".wav");
    const fs::path aug_csv = config.output_dir / (aug_stem + ".csv");
    write_foa_wav(aug_sig, aug_wav);
    write_labels_csv(aug_labels, aug_csv, aug_sig.sample_rate);
    entry["outputs"].push_back(claim(aug_wav.filename().string()));
    entry["outputs"].push_back(claim(aug_csv.filename().string()));

    manifest["files"].push_back(std::move(entry));
    ++outcome.files_processed;
    ++outcome.files_augmented;
  }

  outcome.manifest_path = config.manifest_path.empty()
                              ? config.output_dir / "manifest.json"
                              : config.manifest_path;
  std::ofstream os(outcome.manifest_path, std::ios::trunc);
  if (!os) {
    throw FoaError(Errc::kIoError, "cannot create '" + outcome.manifest_path.string() + "'");
  }
  os << manifest.dump(2) << '\n';
  return outcome;
}

}  // namespace foaaug
