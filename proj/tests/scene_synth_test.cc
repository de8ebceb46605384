/*
Copyright 2026 The SELD Front-end Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS-IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include "seld/scene_synth.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>

#include "gtest/gtest.h"
#include "seld/error.h"
#include "seld/wav_io.h"

namespace seld {
namespace {

SceneEvent Burst(double az, double onset, double offset, std::uint64_t seed) {
  SceneEvent e;
  e.direction = Direction::FromDegrees(az, 0);
  e.onset_s = onset;
  e.offset_s = offset;
  e.seed = seed;
  return e;
}

TEST(DiffuseDirectionsTest, FormsSphericalThreeDesign) {
  const auto& dirs = DiffuseFieldDirections();
  ASSERT_EQ(dirs.size(), 24u);
  double sum[3] = {}, outer[3][3] = {};
  for (const Direction& d : dirs) {
    const double u[3] = {std::cos(d.elevation) * std::cos(d.azimuth),
                         std::cos(d.elevation) * std::sin(d.azimuth),
                         std::sin(d.elevation)};
    for (int i = 0; i < 3; ++i) {
      sum[i] += u[i];
      for (int j = 0; j < 3; ++j) outer[i][j] += u[i] * u[j];
    }
  }
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(sum[i], 0.0, 1e-12);
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(outer[i][j], i == j ? 8.0 : 0.0, 1e-12);
  }
  for (size_t a = 0; a < dirs.size(); ++a) {
    for (size_t b = a + 1; b < dirs.size(); ++b) {
      EXPECT_GT(CentralAngle(dirs[a], dirs[b]), 0.1);
    }
  }
}

TEST(SynthesizeTest, BurstIsConfinedToItsInterval) {
  SceneSpec spec;
  spec.duration_s = 1.0;
  spec.events = {Burst(20, 0.25, 0.5, 1)};
  const SynthesizedScene scene = Synthesize(spec);
  const auto& w = scene.audio.channels[kW];
  ASSERT_EQ(w.size(), 48000u);
  for (size_t i = 0; i < w.size(); ++i) {
    const bool inside = i >= 12000 && i < 24000;
    if (!inside) {
      ASSERT_EQ(w[i], 0.0) << i;
    }
  }
  double power = 0.0;
  for (size_t i = 12000; i < 24000; ++i) power += w[i] * w[i];
  EXPECT_NEAR(power / 12000, 1.0, 1e-9);  // unit RMS gain
}

TEST(SynthesizeTest, Deterministic) {
  SceneSpec spec;
  spec.duration_s = 0.5;
  spec.seed = 99;
  spec.diffuse_snr_db = 6.0;
  SceneEvent e = Burst(-45, 0.1, 0.4, 0);
  e.seed.reset();
  spec.events = {e};
  const SynthesizedScene a = Synthesize(spec), b = Synthesize(spec);
  EXPECT_EQ(a.audio.channels, b.audio.channels);
  spec.seed = 100;
  EXPECT_NE(Synthesize(spec).audio.channels, a.audio.channels);
}

TEST(SynthesizeTest, EventsAddLinearly) {
  SceneSpec one, two, both;
  one.duration_s = two.duration_s = both.duration_s = 0.5;
  one.events = {Burst(10, 0.1, 0.3, 5)};
  two.events = {Burst(-100, 0.2, 0.45, 6)};
  both.events = {one.events[0], two.events[0]};
  const auto a = Synthesize(one), b = Synthesize(two), c = Synthesize(both);
  for (int ch = 0; ch < 4; ++ch) {
    for (size_t i = 0; i < c.audio.num_samples(); ++i) {
      ASSERT_NEAR(c.audio.channels[ch][i],
                  a.audio.channels[ch][i] + b.audio.channels[ch][i], 1e-12);
    }
  }
}

TEST(SynthesizeTest, DiffuseLevelFollowsSnr) {
  SceneSpec spec;
  spec.duration_s = 2.0;
  spec.seed = 3;
  spec.diffuse_snr_db = 10.0;
  const auto noise = Synthesize(spec);
  const auto& w = noise.audio.channels[kW];
  const double power =
      std::inner_product(w.begin(), w.end(), w.begin(), 0.0) / w.size();
  EXPECT_NEAR(power, 0.1, 0.005);  // unit reference without events
}

TEST(SynthesizeTest, TonesAndChirps) {
  SceneSpec spec;
  spec.duration_s = 0.2;
  SceneEvent tone = Burst(0, 0.0, 0.1, 1);
  tone.kind = SignalKind::kTone;
  tone.frequency_hz = 1000;
  SceneEvent chirp = Burst(0, 0.1, 0.2, 1);
  chirp.kind = SignalKind::kChirp;
  spec.events = {tone, chirp};
  const auto tone_signal = EventSignal(spec, 0);
  EXPECT_NEAR(tone_signal[12], std::sqrt(2.0) * std::sin(kTwoPi * 1000 * 12 / 48000.0),
              1e-12);
  const auto chirp_signal = EventSignal(spec, 1);
  double power = 0;
  for (size_t i = 4800; i < 9600; ++i) power += chirp_signal[i] * chirp_signal[i];
  EXPECT_NEAR(power / 4800, 1.0, 0.02);
  for (size_t i = 0; i < 4800; ++i) ASSERT_EQ(chirp_signal[i], 0.0);
}

TEST(SynthesizeTest, BandLimitedBurstKeepsItsBand) {
  SceneSpec spec;
  spec.duration_s = 0.5;
  SceneEvent e = Burst(0, 0.0, 0.5, 8);
  e.band_hz = std::array<double, 2>{4000, 6000};
  spec.events = {e};
  const auto x = EventSignal(spec, 0);
  // Goertzel-free check: correlation with an out-of-band tone is tiny.
  double in = 0, out = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    in += x[i] * std::sin(kTwoPi * 5000 * i / 48000.0);
    out += x[i] * std::sin(kTwoPi * 1000 * i / 48000.0);
  }
  EXPECT_GT(std::abs(in), 100 * std::abs(out));
}

TEST(SynthesizeTest, FileEvent) {
  const std::string dir = ::testing::TempDir() + "/seld_file_event";
  std::filesystem::create_directories(dir);
  WavData mono{48000.0, {{0.5, -0.25, 0.125}}};
  WriteWav(dir + "/src.wav", mono);
  const SceneSpec spec = ParseSceneSpec(
      "duration_s = 0.01\n[event]\nkind = file\npath = src.wav\n"
      "onset_s = 0\noffset_s = 0.005\ngain = 2\n",
      dir);
  const auto x = EventSignal(spec, 0);
  EXPECT_EQ(x[0], 1.0);
  EXPECT_EQ(x[1], -0.5);
  EXPECT_EQ(x[3], 1.0);  // tiled
  EXPECT_EQ(x[300], 0.0);
  std::filesystem::remove_all(dir);
}

TEST(ReferenceTest, FrameSpans) {
  SceneSpec spec;
  spec.duration_s = 2.0;
  SceneEvent e = Burst(30, 0.2, 0.82, 1);
  e.direction = Direction::FromDegrees(30, 10);
  e.class_id = 7;
  spec.events = {e, Burst(-30, 0.0, 0.1, 2)};
  const auto ref = ReferenceEvents(spec, 0.02);
  ASSERT_EQ(ref.size(), 2u);
  EXPECT_EQ(ref[0].onset, 0);
  EXPECT_EQ(ref[0].offset, 4);
  EXPECT_EQ(ref[1].onset, 10);
  EXPECT_EQ(ref[1].offset, 40);
  EXPECT_EQ(ref[1].class_id, 7);
  EXPECT_EQ(ref[1].median_doa, Direction::FromDegrees(30, 10));
  EXPECT_EQ(SceneFrameCount(spec, 0.02), 100);
}

TEST(SceneSpecTest, ParsesAllKeys) {
  const SceneSpec spec = ParseSceneSpec(
      "duration_s = 3\nsample_rate_hz = 24000\nseed = 5\ndiffuse_snr_db = 20\n"
      "[event]\nkind = noise-burst\nazimuth_deg = -45\nelevation_deg = 12\n"
      "onset_s = 0.5\noffset_s = 1.5\ngain = 0.5\nclass_id = 2\n"
      "band_hz = 100, 2000\nseed = 77\n"
      "[event]\nkind = chirp\nonset_s = 1\noffset_s = 2\nchirp_hz = 300, 900\n"
      "[event]\nkind = tone\nonset_s = 2\noffset_s = 3\nfrequency_hz = 440\n",
      ".");
  EXPECT_EQ(spec.duration_s, 3.0);
  EXPECT_EQ(spec.sample_rate_hz, 24000.0);
  EXPECT_EQ(spec.seed, 5u);
  EXPECT_EQ(*spec.diffuse_snr_db, 20.0);
  ASSERT_EQ(spec.events.size(), 3u);
  EXPECT_NEAR(spec.events[0].direction.azimuth_deg(), -45.0, 1e-12);
  EXPECT_EQ(spec.events[0].class_id, 2);
  EXPECT_EQ((*spec.events[0].band_hz)[1], 2000.0);
  EXPECT_EQ(*spec.events[0].seed, 77u);
  EXPECT_EQ(spec.events[1].kind, SignalKind::kChirp);
  EXPECT_EQ(spec.events[1].chirp_hz[0], 300.0);
  EXPECT_EQ(spec.events[2].frequency_hz, 440.0);
}

TEST(SceneSpecTest, RejectsInvalidSpecs) {
  EXPECT_THROW(ParseSceneSpec("seed = 1\n", "."), InputError);
  EXPECT_THROW(ParseSceneSpec("duration_s = 0\n", "."), InputError);
  EXPECT_THROW(ParseSceneSpec("duration_s = 1\n[event]\nonset_s = 0.5\n", "."),
               InputError);
  EXPECT_THROW(ParseSceneSpec("duration_s = 1\n[event]\nonset_s = 0.5\noffset_s = 0.4\n", "."),
               InputError);
  EXPECT_THROW(ParseSceneSpec("duration_s = 1\n[event]\nonset_s = 0.5\noffset_s = 1.5\n", "."),
               InputError);
  EXPECT_THROW(ParseSceneSpec("duration_s = 1\n[event]\nkind = laser\nonset_s = 0\noffset_s = 1\n", "."),
               InputError);
  EXPECT_THROW(ParseSceneSpec("duration_s = 1\n[event]\nonset_s = 0\noffset_s = 1\nelevation_deg = 100\n", "."),
               InputError);
  EXPECT_THROW(ParseSceneSpec("duration_s = 1\n[noise]\n", "."), InputError);
  EXPECT_THROW(ParseSceneSpec("duration_s = 1\nbogus = 2\n", "."), InputError);
  EXPECT_THROW(ParseSceneSpec("duration_s = 1\n[event]\nkind = file\nonset_s = 0\noffset_s = 1\n", "."),
               InputError);
}

}  // namespace
}  // namespace seld
