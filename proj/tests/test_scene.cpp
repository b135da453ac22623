//
//  test_scene.cpp
//  foaaug
//
//  The scene encoder is the ground-truth oracle for everything else, so it
//  gets checked directly against the steering formulas here.
//
//  Distributed under the Apache License, Version 2.0.
//  See the accompanying file LICENSE or http://www.apache.org/licenses/LICENSE-2.0.html
//

#include <catch2/catch_amalgamated.hpp>
#include <sstream>

#include "foaaug/scene.hpp"

using namespace foaaug;
using Catch::Matchers::WithinAbs;

namespace {

SourceTrack static_source(int id, std::vector<double> samples, Direction d,
                          std::size_t n_frames, std::size_t onset = 0) {
  SourceTrack s;
  s.source_id = id;
  s.samples = std::move(samples);
  s.trajectory.assign(n_frames, d);
  s.onset = onset;
  return s;
}

}  // namespace

TEST_CASE("single source at the front axis", "[scene]") {
  Rng rng(21);
  const auto noise = gen_test_source(TestSourceKind::kWhiteNoise, 3200, 32000, rng);
  const auto [sig, labels] =
      encode_scene({static_source(0, noise, {0.0, 0.0}, 5)}, 32000, 3200, 0.02);

  for (std::size_t i = 0; i < 3200; i += 37) {
    CHECK(sig.channels[kChanW][i] == noise[i]);
    CHECK_THAT(sig.channels[kChanY][i], WithinAbs(0.0, 1e-15));
    CHECK_THAT(sig.channels[kChanZ][i], WithinAbs(0.0, 1e-15));
    CHECK_THAT(sig.channels[kChanX][i], WithinAbs(kSqrt3 * noise[i], 1e-12));
  }
  REQUIRE(labels.frames.size() == 5);
  for (const auto& f : labels.frames) {
    REQUIRE(f.size() == 1);
    CHECK(f.front().source_id == 0);
    CHECK(f.front().direction.azimuth == 0.0);
  }
}

TEST_CASE("opposite sources cancel the Y channel", "[scene]") {
  Rng rng(22);
  const auto noise = gen_test_source(TestSourceKind::kWhiteNoise, 3200, 32000, rng);
  const auto left = static_source(0, noise, direction_deg(90.0, 0.0), 5);
  const auto right = static_source(1, noise, direction_deg(-90.0, 0.0), 5);
  const auto [sig, labels] = encode_scene({left, right}, 32000, 3200, 0.02);

  for (std::size_t i = 0; i < 3200; i += 37) {
    CHECK_THAT(sig.channels[kChanW][i], WithinAbs(noise[i], 1e-12));
    CHECK_THAT(sig.channels[kChanY][i], WithinAbs(0.0, 1e-12));
    CHECK_THAT(sig.channels[kChanZ][i], WithinAbs(0.0, 1e-15));
    CHECK_THAT(sig.channels[kChanX][i], WithinAbs(0.0, 1e-12));
  }
  REQUIRE(labels.max_overlap() == 2);
}

TEST_CASE("moving source has piecewise-constant frame gains", "[scene]") {
  Rng rng(23);
  const std::size_t length = 6400;
  const auto noise = gen_test_source(TestSourceKind::kWhiteNoise, length, 32000, rng);
  SourceTrack src;
  src.source_id = 3;
  src.samples = noise;
  for (int f = 0; f < 10; ++f) {
    src.trajectory.push_back(direction_deg(-90.0 + 20.0 * f, 4.0 * f - 20.0));
  }
  const auto [sig, labels] = encode_scene({src}, 32000, length, 0.02);

  for (std::size_t f = 0; f < 10; ++f) {
    const SteeringVector g = steering_vector(src.trajectory[f]);
    for (std::size_t i = f * 640; i < (f + 1) * 640; i += 101) {
      CHECK_THAT(sig.channels[kChanY][i], WithinAbs(g.y * noise[i], 1e-12));
      CHECK_THAT(sig.channels[kChanZ][i], WithinAbs(g.z * noise[i], 1e-12));
      CHECK_THAT(sig.channels[kChanX][i], WithinAbs(g.x * noise[i], 1e-12));
    }
    CHECK(angular_distance(labels.frames[f].front().direction, src.trajectory[f]) == 0.0);
  }
}

TEST_CASE("encoding is linear in the source sum", "[scene]") {
  Rng rng(24);
  const std::size_t length = 3200;
  const auto a = static_source(0, gen_test_source(TestSourceKind::kWhiteNoise, length, 32000, rng),
                               direction_deg(30.0, 10.0), 5);
  const auto b = static_source(1, gen_test_source(TestSourceKind::kWhiteNoise, length, 32000, rng),
                               direction_deg(-50.0, -20.0), 5);
  const auto c = static_source(2, gen_test_source(TestSourceKind::kSine, length, 32000, rng),
                               direction_deg(120.0, 35.0), 5);

  const auto [all, all_labels] = encode_scene({a, b, c}, 32000, length, 0.02);
  const auto [ab, ab_labels] = encode_scene({a, b}, 32000, length, 0.02);
  const auto [cc, cc_labels] = encode_scene({c}, 32000, length, 0.02);

  // encode weights by 1/N, so re-weight the parts: 3*all == 2*ab + 1*cc.
  for (int ch = 0; ch < 4; ++ch) {
    for (std::size_t i = 0; i < length; i += 17) {
      CHECK_THAT(3.0 * all.channels[ch][i],
                 WithinAbs(2.0 * ab.channels[ch][i] + cc.channels[ch][i], 1e-12));
    }
  }
}

TEST_CASE("unit impulse reproduces the steering vector over N", "[scene]") {
  std::vector<double> impulse(640, 0.0);
  impulse[100] = 1.0;
  const Direction d = direction_deg(72.0, -31.0);
  const auto src = static_source(0, impulse, d, 1);
  const auto two = std::vector<SourceTrack>{src, static_source(1, std::vector<double>(640, 0.0), d, 1)};
  const auto [sig, labels] = encode_scene(two, 32000, 640, 0.02);

  const SteeringVector g = steering_vector(d);
  CHECK(sig.channels[kChanW][100] == 0.5 * g.w);
  CHECK(sig.channels[kChanY][100] == 0.5 * g.y);
  CHECK(sig.channels[kChanZ][100] == 0.5 * g.z);
  CHECK(sig.channels[kChanX][100] == 0.5 * g.x);

  // The all-zero source contributes no labels.
  CHECK(labels.frames[0].size() == 1);
}

TEST_CASE("empty scene encodes to silence with inactive labels", "[scene]") {
  const auto [sig, labels] = encode_scene({}, 32000, 1600, 0.02);
  CHECK(sig.length() == 1600);
  for (int ch = 0; ch < 4; ++ch) {
    for (double v : sig.channels[ch]) CHECK(v == 0.0);
  }
  CHECK(labels.frames.size() == 3);
  CHECK(labels.active_frame_count() == 0);
}

TEST_CASE("activity follows the per-frame RMS threshold", "[scene]") {
  Rng rng(25);
  // Source occupies only the middle frame of three.
  auto noise = gen_test_source(TestSourceKind::kWhiteNoise, 640, 32000, rng);
  const auto src = static_source(0, noise, direction_deg(10.0, 5.0), 3, 640);
  const auto [sig, labels] = encode_scene({src}, 32000, 1920, 0.02);
  REQUIRE(labels.frames.size() == 3);
  CHECK(labels.frames[0].empty());
  CHECK(labels.frames[1].size() == 1);
  CHECK(labels.frames[2].empty());
}

TEST_CASE("a nonzero sample beyond the trajectory is an invalid scene", "[scene]") {
  std::vector<double> s(1280, 0.5);
  auto src = static_source(0, s, {0.0, 0.0}, 1);  // trajectory covers 1 of 2 frames
  CHECK_THROWS_AS(encode_scene({src}, 32000, 1280, 0.02), FoaError);

  // All-zero samples past the trajectory are fine.
  std::fill(src.samples.begin() + 640, src.samples.end(), 0.0);
  CHECK_NOTHROW(encode_scene({src}, 32000, 1280, 0.02));
}

TEST_CASE("test source material", "[scene]") {
  Rng rng(26);

  SECTION("sine: 440 Hz at 32 kHz has a 72.7-sample period and unit peak") {
    const auto s = gen_test_source(TestSourceKind::kSine, 64000, 32000, rng);
    double peak = 0.0;
    for (double v : s) peak = std::max(peak, std::abs(v));
    CHECK(peak <= 1.0);
    CHECK(peak > 0.999);
    // Zero crossings (up) should be one period apart on average.
    int crossings = 0;
    for (std::size_t i = 1; i < s.size(); ++i) {
      if (s[i - 1] < 0.0 && s[i] >= 0.0) ++crossings;
    }
    const double period = static_cast<double>(s.size()) / crossings;
    CHECK_THAT(period, WithinAbs(32000.0 / 440.0, 0.1));
  }

  SECTION("white noise: deterministic per seed, peak below 1") {
    Rng r1(99);
    Rng r2(99);
    const auto a = gen_test_source(TestSourceKind::kWhiteNoise, 4096, 32000, r1);
    const auto b = gen_test_source(TestSourceKind::kWhiteNoise, 4096, 32000, r2);
    CHECK(a == b);
    for (double v : a) CHECK(std::abs(v) <= 1.0);
  }

  SECTION("pulse train: nonzero only at the pulse instants") {
    const auto s = gen_test_source(TestSourceKind::kPulseTrain, 9600, 32000, rng);
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i % 3200 == 0) CHECK(s[i] == 1.0);
      else CHECK(s[i] == 0.0);
    }
  }
}

TEST_CASE("scenario files parse and realize", "[scene]") {
  std::istringstream text(
      "# two sources\n"
      "0 white_noise 0.0 1.0 0.0:30:10\n"
      "1 sine 0.25 0.5 0.0:-80:0 1.0:80:20\n");
  const auto scenario = parse_scenario(text);
  REQUIRE(scenario.size() == 2);
  CHECK(scenario[0].kind == TestSourceKind::kWhiteNoise);
  CHECK(scenario[1].path.size() == 2);

  SECTION("waypoint interpolation follows the shorter arc and clamps ends") {
    const Direction mid = scenario_direction_at(scenario[1], 0.5);
    CHECK_THAT(rad_to_deg(mid.azimuth), WithinAbs(0.0, 1e-9));
    CHECK_THAT(rad_to_deg(mid.elevation), WithinAbs(10.0, 1e-9));
    const Direction before = scenario_direction_at(scenario[1], -3.0);
    CHECK_THAT(rad_to_deg(before.azimuth), WithinAbs(-80.0, 1e-9));
    const Direction after = scenario_direction_at(scenario[1], 9.0);
    CHECK_THAT(rad_to_deg(after.azimuth), WithinAbs(80.0, 1e-9));
  }

  SECTION("realized sources encode without complaint") {
    Rng rng(27);
    const auto sources = realize_scenario(scenario, 32000, 32000, 0.02, rng);
    REQUIRE(sources.size() == 2);
    CHECK(sources[1].onset == 8000);
    const auto [sig, labels] = encode_scene(sources, 32000, 32000, 0.02);
    CHECK(labels.max_overlap() == 2);
    CHECK(labels.active_frame_count() > 0);
  }

  SECTION("malformed lines carry their line number") {
    std::istringstream bad("0 white_noise 0.0\n");
    CHECK_THROWS_AS(parse_scenario(bad), FoaError);
    std::istringstream bad_kind("0 pink_noise 0.0 1.0 0:0:0\n");
    CHECK_THROWS_AS(parse_scenario(bad_kind), FoaError);
    std::istringstream bad_wp("\n\n0 sine 0.0 1.0 nope\n");
    try {
      parse_scenario(bad_wp);
      FAIL("expected a parse error");
    } catch (const FoaError& e) {
      CHECK(e.code() == Errc::kParseError);
      CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
  }
}
