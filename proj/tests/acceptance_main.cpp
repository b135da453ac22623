//
//  acceptance_main.cpp
//  foaaug
//
//  End-to-end acceptance gate: one pass/fail line per criterion, nonzero
//  exit when anything fails. Scene counts and tolerances are fixed here on
//  purpose; they are the contract, not tuning knobs.
//
//  Distributed under the Apache License, Version 2.0.
//  See the accompanying file LICENSE or http://www.apache.org/licenses/LICENSE-2.0.html
//

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "foaaug/cli.hpp"
#include "foaaug/verify.hpp"

namespace fs = std::filesystem;
using namespace foaaug;

namespace {

int g_failures = 0;

void report(int index, const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %d: %s -- %s\n", pass ? "PASS" : "FAIL", index, name.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Criterion 8: byte-identical CLI augment runs over a 20-file fixture tree.
void check_cli_determinism() {
  const fs::path root =
      fs::temp_directory_path() / ("foaaug_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(root);
  const fs::path in_dir = root / "in";
  fs::create_directories(in_dir);

  for (int i = 0; i < 20; ++i) {
    Rng rng(1000 + static_cast<std::uint64_t>(i));
    const auto sources = verify::random_scene(rng, 1, 32000, 6400, 0.02, -40.0, 40.0);
    const auto [sig, labels] = encode_scene(sources, 32000, 6400, 0.02);
    char name[32];
    std::snprintf(name, sizeof name, "clip_%02d", i);
    write_foa_wav(sig, in_dir / (std::string(name) + ".wav"));
    write_labels_csv(labels, in_dir / (std::string(name) + ".csv"), 32000);
  }

  const auto run_once = [&](const fs::path& out_dir) {
    std::ostringstream out;
    std::ostringstream err;
    return cli::run({"augment", "--method", "labels_first", "--probability", "0.5", "--seed",
                     "424242", "--elevation-mode", "label-range", "--elevation-min", "-40",
                     "--elevation-max", "40", "--in", in_dir.string(), "--out",
                     out_dir.string()},
                    out, err);
  };

  bool pass = run_once(root / "a") == 0 && run_once(root / "b") == 0;
  std::size_t files = 0;
  if (pass) {
    std::vector<std::string> names;
    for (const auto& e : fs::directory_iterator(root / "a")) {
      names.push_back(e.path().filename().string());
    }
    files = names.size();
    for (const auto& n : names) {
      if (!fs::exists(root / "b" / n) || slurp(root / "a" / n) != slurp(root / "b" / n)) {
        pass = false;
        break;
      }
    }
  }
  fs::remove_all(root);
  report(8, "deterministic CLI augmentation", pass,
         pass ? "two seeded runs over 20 input pairs produced " + std::to_string(files) +
                    " byte-identical files"
              : "output trees differ");
}

}  // namespace

int main() {
  verify::Options opts;  // 50/20, 100, 50, 100 scenes at 2 s / 32 kHz

  {
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = verify::check_patterns_oracle(opts);
    const double dt = seconds_since(t0);
    char extra[48];
    std::snprintf(extra, sizeof extra, " [%.1f s, budget 60 s]", dt);
    report(1, "16-pattern oracle equivalence", r.pass && dt <= 60.0, r.detail + extra);
  }
  {
    const auto r = verify::check_labels_first_oracle(opts);
    report(2, "labels-first oracle equivalence", r.pass, r.detail);
  }
  {
    const auto r = verify::check_channels_first_oracle(opts);
    report(3, "channels-first oracle equivalence", r.pass, r.detail);
  }
  {
    const auto r = verify::check_pattern_group(opts);
    report(4, "pattern matrices form a group of order 16", r.pass, r.detail);
  }
  {
    const auto r = verify::check_estimator_equivariance(opts);
    report(5, "estimator equivariance", r.pass, r.detail);
  }
  {
    const auto r = verify::check_domain_preservation(opts);
    report(6, "pattern label-domain preservation", r.pass, r.detail);
  }
  {
    const auto r = verify::check_wrap_formula(opts);
    report(7, "azimuth wrap formula", r.pass, r.detail);
  }
  check_cli_determinism();

  std::printf(
      "[SKIP] criterion 9: published DNN training results -- requires training CRNNs on the "
      "DCASE2019 dataset; out of scope here, criteria 1-8 stand in\n");

  if (g_failures > 0) {
    std::printf("%d criterion(s) FAILED\n", g_failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
