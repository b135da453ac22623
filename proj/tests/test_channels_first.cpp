//
//  test_channels_first.cpp
//  foaaug
//
//  Distributed under the Apache License, Version 2.0.
//  See the accompanying file LICENSE or http://www.apache.org/licenses/LICENSE-2.0.html
//

#include <catch2/catch_amalgamated.hpp>

#include "foaaug/channels_first.hpp"
#include "foaaug/patterns16.hpp"
#include "foaaug/scene.hpp"
#include "foaaug/verify.hpp"

using namespace foaaug;
using Catch::Matchers::WithinAbs;

TEST_CASE("gram_schmidt", "[channels-first]") {
  SECTION("the identity is already orthonormal") {
    const auto q = gram_schmidt(Mat3::identity());
    REQUIRE(q.has_value());
    CHECK(*q == Mat3::identity());
  }

  SECTION("rank-deficient input is rejected") {
    Mat3 ones{};
    ones.m.fill(1.0);
    CHECK_FALSE(gram_schmidt(ones).has_value());
  }

  SECTION("output is orthonormal for well-conditioned input") {
    Rng rng(61);
    for (int i = 0; i < 200; ++i) {
      Mat3 a{};
      for (auto& v : a.m) v = rng.normal();
      const auto q = gram_schmidt(a);
      if (!q) continue;  // essentially impossible, but not an error
      CHECK(orthonormality_error(*q) < 1e-14);
    }
  }
}

TEST_CASE("random_orthonormal: orthonormality, dets, determinism", "[channels-first]") {
  int det_positive = 0;
  int det_negative = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    Rng rng(seed);
    const Rotation3 r = random_orthonormal(rng);
    CHECK(orthonormality_error(r) <= 1e-10);
    CHECK_THAT(std::abs(r.det()), WithinAbs(1.0, 1e-10));
    (r.det() > 0.0 ? det_positive : det_negative) += 1;
  }
  // Gram-Schmidt keeps the sign of the original determinant, so both kinds
  // of transform (rotations and rotoreflections) must occur.
  CHECK(det_positive > 300);
  CHECK(det_negative > 300);

  SECTION("identical seeds give bit-identical matrices") {
    Rng a(777);
    Rng b(777);
    CHECK(random_orthonormal(a) == random_orthonormal(b));
  }
}

TEST_CASE("transform_labels", "[channels-first]") {
  LabelTrack labels;
  labels.frame_hop = 0.02;
  labels.frames = {{{0, direction_deg(30.0, 20.0)}}, {}, {{1, direction_deg(-120.0, -5.0)}}};

  SECTION("identity keeps every direction") {
    const LabelTrack out = transform_labels(Mat3::identity(), labels);
    CHECK(verify::max_label_distance_deg(out, labels) < 1e-12);
  }

  SECTION("z reflection flips the elevation") {
    const LabelTrack out = transform_labels(Mat3::diagonal(1.0, 1.0, -1.0), labels);
    CHECK_THAT(rad_to_deg(out.frames[0].front().direction.azimuth), WithinAbs(30.0, 1e-9));
    CHECK_THAT(rad_to_deg(out.frames[0].front().direction.elevation), WithinAbs(-20.0, 1e-9));
  }

  SECTION("a quarter turn about z matches the pattern label map") {
    const LabelTrack out = transform_labels(Mat3::rotation_z(kHalfPi), labels);
    CHECK_THAT(rad_to_deg(out.frames[0].front().direction.azimuth), WithinAbs(120.0, 1e-9));
    CHECK_THAT(rad_to_deg(out.frames[0].front().direction.elevation), WithinAbs(20.0, 1e-9));
  }

  SECTION("composition: R then R' equals R'R") {
    Rng rng(62);
    for (int i = 0; i < 100; ++i) {
      const Rotation3 r1 = random_orthonormal(rng);
      const Rotation3 r2 = random_orthonormal(rng);
      const LabelTrack two_steps = transform_labels(r2, transform_labels(r1, labels));
      const LabelTrack one_step = transform_labels(r2 * r1, labels);
      CHECK(verify::max_label_distance_deg(two_steps, one_step) < rad_to_deg(1e-9));
    }
  }
}

TEST_CASE("injected pattern matrix reproduces apply_pattern", "[channels-first]") {
  Rng rng(63);
  const auto sources = verify::random_scene(rng, 1, 32000, 9600, 0.02);
  const auto [sig, labels] = encode_scene(sources, 32000, 9600, 0.02);

  const PatternId quarter{1, false};
  const auto via_pattern = apply_pattern(sig, labels, quarter);
  const auto via_matrix = apply_channels_first(sig, labels, pattern_channel_matrix(quarter));

  for (int ch = 0; ch < 4; ++ch) {
    for (std::size_t i = 0; i < sig.length(); i += 97) {
      CHECK_THAT(via_matrix.signal.channels[ch][i],
                 WithinAbs(via_pattern.first.channels[ch][i], 1e-12));
    }
  }
  CHECK(verify::max_label_distance_deg(via_matrix.labels, via_pattern.second) < rad_to_deg(1e-9));
}

TEST_CASE("identity injection is a no-op", "[channels-first]") {
  Rng rng(64);
  const auto sources = verify::random_scene(rng, 2, 32000, 6400, 0.02);
  const auto [sig, labels] = encode_scene(sources, 32000, 6400, 0.02);
  const auto res = apply_channels_first(sig, labels, Mat3::identity());
  for (int ch = 0; ch < 4; ++ch) {
    for (std::size_t i = 0; i < sig.length(); i += 41) {
      CHECK(res.signal.channels[ch][i] == sig.channels[ch][i]);
    }
  }
}

TEST_CASE("oracle equivalence with three overlapping sources", "[channels-first]") {
  Rng rng(65);
  for (int rep = 0; rep < 5; ++rep) {
    const auto sources = verify::random_scene(rng, 3, 32000, 9600, 0.02);
    const auto [sig, labels] = encode_scene(sources, 32000, 9600, 0.02);
    const auto res = apply_channels_first(sig, labels, rng);

    const auto mapped = verify::map_source_directions(sources, [&](Direction d) {
      return to_spherical(res.rotation * to_cartesian(d));
    });
    const auto [ref, ref_labels] = encode_scene(mapped, 32000, 9600, 0.02);
    CHECK(verify::max_frame_relative_rms(res.signal, ref, 0.02) < 1e-6);
    CHECK(verify::max_label_distance_deg(res.labels, ref_labels) < 1e-9);

    CHECK(res.signal.channels[kChanW] == sig.channels[kChanW]);
    for (std::size_t i = 0; i < sig.length(); i += 211) {
      const double before = sig.channels[kChanX][i] * sig.channels[kChanX][i] +
                            sig.channels[kChanY][i] * sig.channels[kChanY][i] +
                            sig.channels[kChanZ][i] * sig.channels[kChanZ][i];
      const double after = res.signal.channels[kChanX][i] * res.signal.channels[kChanX][i] +
                           res.signal.channels[kChanY][i] * res.signal.channels[kChanY][i] +
                           res.signal.channels[kChanZ][i] * res.signal.channels[kChanZ][i];
      CHECK_THAT(after, WithinAbs(before, 1e-9 * std::max(1.0, before)));
    }
  }
}

TEST_CASE("span mismatch is rejected", "[channels-first]") {
  Rng rng(66);
  const auto sources = verify::random_scene(rng, 1, 32000, 6400, 0.02);
  const auto [sig, labels] = encode_scene(sources, 32000, 6400, 0.02);
  LabelTrack wrong = labels;
  wrong.frames.resize(3);
  CHECK_THROWS_AS(apply_channels_first(sig, wrong, rng), FoaError);
}
