//
//  cli.hpp
//  foaaug
//
//  Command-line front end: batch augmentation, fixture generation, DOA
//  estimation, metrics, and the self-verification suite. Kept in the
//  library (rather than in the binary's main) so tests can drive the exact
//  CLI code path in-process.
//
//  Distributed under the Apache License, Version 2.0.
//  See the accompanying file LICENSE or http://www.apache.org/licenses/LICENSE-2.0.html
//

#pragma once

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "foaaug/doa_iv.hpp"
#include "foaaug/error.hpp"
#include "foaaug/label_csv.hpp"
#include "foaaug/pipeline.hpp"
#include "foaaug/scene.hpp"
#include "foaaug/verify.hpp"
#include "foaaug/wav.hpp"

namespace foaaug::cli {

/// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O or
/// data error.
enum ExitCode : int {
  kExitOk = 0,
  kExitVerifyFailed = 1,
  kExitUsage = 2,
  kExitIo = 3,
};

/// Run the CLI on already-split arguments (no program name). All output goes
/// to the given streams so tests can capture it.
inline int run(std::vector<std::string> args, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  CLI::App app{"FOA spatial augmentation toolkit"};
  app.require_subcommand(1);

  // --- augment ---------------------------------------------------------
  auto* augment = app.add_subcommand(
      "augment", "Augment every (wav, csv) pair in a directory");
  std::string method = "patterns16";
  double probability = 0.5;
  std::uint64_t seed = 0;
  std::string elevation_mode = "label-range";
  double elevation_min_deg = -90.0;
  double elevation_max_deg = 90.0;
  double frame_hop_ms = 20.0;
  std::string in_dir;
  std::string out_dir;
  std::string manifest;
  augment->add_option("--method", method, "Augmentation method")
      ->check(CLI::IsMember({"patterns16", "labels_first", "channels_first"}));
  augment->add_option("--probability", probability, "Fraction of inputs to augment")
      ->check(CLI::Range(0.0, 1.0));
  augment->add_option("--seed", seed, "Global seed; per-file seeds derive from it");
  augment->add_option("--elevation-mode", elevation_mode, "Beta selection mode (labels_first)")
      ->check(CLI::IsMember({"label-range", "fixed-range"}));
  augment->add_option("--elevation-min", elevation_min_deg, "Range lower bound, degrees")
      ->check(CLI::Range(-90.0, 90.0));
  augment->add_option("--elevation-max", elevation_max_deg, "Range upper bound, degrees")
      ->check(CLI::Range(-90.0, 90.0));
  augment->add_option("--frame-hop-ms", frame_hop_ms, "Fallback label frame hop")
      ->check(CLI::PositiveNumber);
  augment->add_option("--in", in_dir, "Input directory")->required();
  augment->add_option("--out", out_dir, "Output directory")->required();
  augment->add_option("--manifest", manifest, "Manifest path (default <out>/manifest.json)");

  // --- gen-scene -------------------------------------------------------
  auto* gen = app.add_subcommand("gen-scene", "Encode a scenario file into a (wav, csv) fixture");
  std::string scenario_path;
  std::string gen_out;
  int gen_rate = 32000;
  double gen_duration = 0.0;
  double gen_hop_ms = 20.0;
  std::uint64_t gen_seed = 0;
  gen->add_option("scenario", scenario_path, "Scenario text file")->required();
  gen->add_option("--out", gen_out, "Output path prefix (writes <out>.wav and <out>.csv)")
      ->required();
  gen->add_option("--rate", gen_rate, "Sample rate, Hz")->check(CLI::PositiveNumber);
  gen->add_option("--duration", gen_duration,
                  "Scene length, seconds (default: end of the last source)");
  gen->add_option("--frame-hop-ms", gen_hop_ms, "Label frame hop")
      ->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_seed, "Seed for the source material");

  // --- estimate --------------------------------------------------------
  auto* estimate = app.add_subcommand("estimate", "Estimate per-frame DOAs from a FOA wav");
  std::string est_in;
  std::string est_out;
  double est_hop_ms = 20.0;
  double est_threshold = kDefaultActivityThreshold;
  estimate->add_option("--in", est_in, "Input wav")->required();
  estimate->add_option("--out", est_out, "Output label CSV")->required();
  estimate->add_option("--frame-hop-ms", est_hop_ms, "Frame hop")->check(CLI::PositiveNumber);
  estimate->add_option("--threshold", est_threshold,
                       "Activity threshold (fraction of loudest frame)")
      ->check(CLI::NonNegativeNumber);

  // --- metrics ---------------------------------------------------------
  auto* metrics = app.add_subcommand("metrics", "DOA error and frame recall of two label CSVs");
  std::string met_est;
  std::string met_ref;
  bool met_jsonl = false;
  metrics->add_option("--est", met_est, "Estimated labels CSV")->required();
  metrics->add_option("--ref", met_ref, "Reference labels CSV")->required();
  metrics->add_flag("--jsonl", met_jsonl, "Also print one machine-readable JSON line");

  // --- verify ----------------------------------------------------------
  auto* verify_cmd = app.add_subcommand("verify", "Run the oracle-equivalence property suite");
  std::uint64_t verify_seed = verify::Options{}.seed;
  int verify_scenes = 0;
  verify_cmd->add_option("--seed", verify_seed, "Seed for the synthetic scenes");
  verify_cmd->add_option("--scenes", verify_scenes,
                         "Scale scene counts (default 50/20/100/50/100)");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (app.got_subcommand(augment)) {
      AugmentConfig config;
      config.method = augment_method_from_name(method);
      config.probability = probability;
      config.seed = seed;
      config.elevation_policy.mode = elevation_mode == "fixed-range"
                                         ? ElevationRangeMode::kFixedRange
                                         : ElevationRangeMode::kLabelRange;
      config.elevation_policy.range_min = deg_to_rad(elevation_min_deg);
      config.elevation_policy.range_max = deg_to_rad(elevation_max_deg);
      if (elevation_min_deg > elevation_max_deg) {
        err << "error: --elevation-min must not exceed --elevation-max\n";
        return kExitUsage;
      }
      config.default_frame_hop = frame_hop_ms / 1000.0;
      config.input_dir = in_dir;
      config.output_dir = out_dir;
      if (!manifest.empty()) config.manifest_path = manifest;
      const AugmentOutcome outcome = run_augment(config);
      out << "augmented " << outcome.files_augmented << " of " << outcome.files_processed
          << " files into " << out_dir << " (manifest: " << outcome.manifest_path.string()
          << ")\n";
      return kExitOk;
    }

    if (app.got_subcommand(gen)) {
      const auto scenario = load_scenario(scenario_path);
      double duration = gen_duration;
      if (duration <= 0.0) {
        for (const auto& s : scenario) duration = std::max(duration, s.onset_s + s.duration_s);
      }
      const auto length = static_cast<std::size_t>(std::llround(duration * gen_rate));
      const double hop = gen_hop_ms / 1000.0;
      Rng rng(gen_seed);
      const auto sources = realize_scenario(scenario, gen_rate, length, hop, rng);
      const auto [sig, labels] = encode_scene(sources, gen_rate, length, hop);
      write_foa_wav(sig, gen_out + ".wav");
      write_labels_csv(labels, gen_out + ".csv", gen_rate);
      out << "wrote " << gen_out << ".wav and " << gen_out << ".csv (" << duration << " s, "
          << scenario.size() << " sources)\n";
      return kExitOk;
    }

    if (app.got_subcommand(estimate)) {
      const FoaSignal sig = read_foa_wav(est_in);
      const double hop = est_hop_ms / 1000.0;
      const auto estimates = estimate_doa(sig, hop, est_threshold);
      LabelTrack track;
      track.frame_hop = hop;
      track.frames.assign(estimates.size(), {});
      for (const auto& e : estimates) {
        if (e.active) track.frames[e.frame_index].push_back({0, e.direction});
      }
      write_labels_csv(track, est_out, sig.sample_rate);
      out << "wrote " << est_out << " (" << track.active_frame_count() << " of "
          << track.frames.size() << " frames active)\n";
      return kExitOk;
    }

    if (app.got_subcommand(metrics)) {
      const LabelTrack ref = read_labels_csv(met_ref);
      const LabelTrack est_track = read_labels_csv(met_est);
      // Re-shape the estimated track into per-frame estimates: one direction
      // per frame, active when any source is listed.
      std::vector<FrameEstimate> est(est_track.frames.size());
      for (std::size_t f = 0; f < est_track.frames.size(); ++f) {
        est[f].frame_index = f;
        if (!est_track.frames[f].empty()) {
          est[f].active = true;
          est[f].direction = est_track.frames[f].front().direction;
        }
      }
      const double er = doa_error_deg(est, ref);
      const double fr = frame_recall(est, ref) * 100.0;
      char line[64];
      out << "metric        value\n";
      std::snprintf(line, sizeof line, "Er (deg)   %10.4f\n", er);
      out << line;
      std::snprintf(line, sizeof line, "FR (%%)     %10.4f\n", fr);
      out << line;
      if (met_jsonl) {
        nlohmann::json rec{{"er_deg", er}, {"fr_percent", fr}};
        out << rec.dump() << "\n";
      }
      return kExitOk;
    }

    if (app.got_subcommand(verify_cmd)) {
      verify::Options opts;
      opts.seed = verify_seed;
      if (verify_scenes > 0) {
        opts.patterns_single_scenes = verify_scenes;
        opts.patterns_multi_scenes = std::max(1, (verify_scenes * 2) / 5);
        opts.labels_first_scenes = verify_scenes * 2;
        opts.channels_first_scenes = verify_scenes;
        opts.estimator_scenes = verify_scenes * 2;
      }
      bool all_pass = true;
      for (const auto& check : verify::run_all(opts)) {
        out << (check.pass ? "[PASS] " : "[FAIL] ") << check.name << ": " << check.detail
            << "\n";
        all_pass = all_pass && check.pass;
      }
      out << (all_pass ? "verification passed\n" : "verification FAILED\n");
      return all_pass ? kExitOk : kExitVerifyFailed;
    }
  } catch (const FoaError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;  // unreachable with require_subcommand(1)
}

}  // namespace foaaug::cli
