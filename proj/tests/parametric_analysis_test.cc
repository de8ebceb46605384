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

#include "seld/parametric_analysis.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "oracles.h"
#include "seld/ambisonics.h"
#include "seld/circular_stats.h"
#include "seld/config.h"
#include "seld/scene_synth.h"
#include "seld/stft.h"

namespace seld {
namespace {

DoaMap EmptyMap(int rows, int cols) {
  DoaMap map;
  map.azimuth = RealPlane(rows, cols);
  map.elevation = RealPlane(rows, cols);
  map.energy = RealPlane(rows, cols);
  map.power = RealPlane(rows, cols);
  map.diffuseness = RealPlane(rows, cols);
  for (int d = 0; d < 3; ++d) {
    map.intensity[d] = RealPlane(rows, cols);
    map.flux[d] = RealPlane(rows, cols);
  }
  map.valid = MaskPlane(rows, cols, 1);
  return map;
}

SceneSpec OneBurst(double az, double el, std::uint64_t seed) {
  SceneSpec spec;
  spec.duration_s = 1.0;
  spec.seed = seed;
  SceneEvent e;
  e.direction = Direction::FromDegrees(az, el);
  e.onset_s = 0.3;
  e.offset_s = 0.7;
  spec.events = {e};
  return spec;
}

DoaMap AnalyzeToDiffuseness(const AmbisonicBuffer& audio,
                            const FrontEndParams& p) {
  const Spectrogram s = Stft(audio, p);
  return WithDiffuseness(IntensityDoa(BandLimit(s, p.analysis_freq_range_hz), p), p);
}

TEST(IntensityDoaTest, PlaneWaveDirectionAtEnergeticBins) {
  const FrontEndParams p;
  const SynthesizedScene scene = Synthesize(OneBurst(30, 10, 1));
  const DoaMap map = AnalyzeToDiffuseness(scene.audio, p);
  const MaskPlane energetic = EnergyMask(map, p);
  int checked = 0;
  for (int k = 1; k < map.num_bins(); ++k) {
    for (int n = 0; n < map.num_windows(); ++n) {
      if (!energetic(k, n)) continue;
      ++checked;
      ASSERT_NEAR(map.azimuth(k, n) * kDegreesFromRadians, 30.0, 0.1);
      ASSERT_NEAR(map.elevation(k, n) * kDegreesFromRadians, 10.0, 0.1);
    }
  }
  EXPECT_GT(checked, 1000);
}

TEST(IntensityDoaTest, OmniSignalHasNoIntensity) {
  FrontEndParams p;
  std::mt19937 rng(2);
  std::normal_distribution<double> normal;
  AmbisonicBuffer b = AmbisonicBuffer::Zeros(4000, 48000.0);
  for (double& v : b.channels[kW]) v = normal(rng);
  const Spectrogram s = Stft(b, p);
  const DoaMap map = WithDiffuseness(IntensityDoa(BandLimit(s, p.analysis_freq_range_hz), p), p);
  for (int k = 0; k < map.num_bins(); ++k) {
    for (int n = 0; n < map.num_windows(); ++n) {
      for (int d = 0; d < 3; ++d) ASSERT_EQ(map.intensity[d](k, n), 0.0);
      const double expected = std::norm(s.at(kW, k, n)) /
                              (2 * p.impedance_z0 * p.speed_of_sound_c);
      ASSERT_NEAR(map.energy(k, n), expected, 1e-15 * std::max(1.0, expected));
      if (map.power(k, n) > 0) {
        ASSERT_EQ(map.diffuseness(k, n), 1.0);
      }
    }
  }
}

TEST(IntensityDoaTest, ImpedanceScalesOnlyEnergyAndIntensity) {
  FrontEndParams p, q;
  q.impedance_z0 = 2 * p.impedance_z0;
  const SynthesizedScene scene = Synthesize(OneBurst(-60, 20, 3));
  const Spectrogram s = Stft(scene.audio, p);
  const DoaMap a = WithDiffuseness(IntensityDoa(BandLimit(s, p.analysis_freq_range_hz), p), p);
  const DoaMap b = WithDiffuseness(IntensityDoa(BandLimit(s, q.analysis_freq_range_hz), q), q);
  EXPECT_EQ(a.azimuth, b.azimuth);
  EXPECT_EQ(a.elevation, b.elevation);
  EXPECT_EQ(a.diffuseness, b.diffuseness);
  for (size_t i = 0; i < a.energy.data().size(); ++i) {
    ASSERT_NEAR(b.energy.data()[i], 0.5 * a.energy.data()[i],
                1e-15 * a.energy.data()[i]);
    for (int d = 0; d < 3; ++d) {
      ASSERT_NEAR(b.intensity[d].data()[i], 0.5 * a.intensity[d].data()[i],
                  1e-15 * std::abs(a.intensity[d].data()[i]));
    }
  }
}

TEST(DiffusenessTest, PlaneWaveIsNotDiffuse) {
  FrontEndParams p;
  // A burst filling the whole signal: every averaging vicinity is stationary.
  SceneSpec spec = OneBurst(100, -35, 4);
  spec.events[0].onset_s = 0.0;
  spec.events[0].offset_s = 1.0;
  const DoaMap map = AnalyzeToDiffuseness(Synthesize(spec).audio, p);
  for (int k = 1; k < map.num_bins(); ++k) {
    for (int n = 0; n < map.num_windows(); ++n) {
      ASSERT_LT(map.diffuseness(k, n), 1e-6);
    }
  }
}

TEST(DiffusenessTest, IsotropicFieldIsDiffuse) {
  FrontEndParams p;
  SceneSpec spec;
  spec.duration_s = 1.0;
  spec.seed = 5;
  spec.diffuse_snr_db = 0.0;
  const DoaMap map = AnalyzeToDiffuseness(Synthesize(spec).audio, p);
  const MaskPlane energetic = EnergyMask(map, p);
  double sum = 0.0;
  int count = 0;
  for (size_t i = 0; i < energetic.data().size(); ++i) {
    if (!energetic.data()[i]) continue;
    sum += map.diffuseness.data()[i];
    ++count;
  }
  ASSERT_GT(count, 0);
  EXPECT_GT(sum / count, 0.9);
  for (double psi : map.diffuseness.data()) {
    ASSERT_GE(psi, 0.0);
    ASSERT_LE(psi, 1.0);
  }
}

TEST(DiffusenessTest, UnclampedStaysNearUnitInterval) {
  FrontEndParams p;
  SceneSpec spec = OneBurst(10, 0, 6);
  spec.diffuse_snr_db = 10.0;
  const Spectrogram s = Stft(Synthesize(spec).audio, p);
  const DoaMap map = IntensityDoa(BandLimit(s, p.analysis_freq_range_hz), p);
  for (double psi : DiffusenessUnclamped(map, p).data()) {
    ASSERT_GE(psi, -1e-9);
    ASSERT_LE(psi, 1.0 + 1e-9);
  }
}

TEST(EnergyMaskTest, ConstantPlaneHasNoPeaks) {
  DoaMap map = EmptyMap(12, 30);
  std::fill(map.power.data().begin(), map.power.data().end(), 2.5);
  const MaskPlane mask = EnergyMask(map, FrontEndParams{});
  for (auto v : mask.data()) ASSERT_EQ(v, 0);
}

TEST(EnergyMaskTest, SinglePeakInSilence) {
  DoaMap map = EmptyMap(12, 30);
  map.power(5, 17) = 1e-3;
  const MaskPlane mask = EnergyMask(map, FrontEndParams{});
  for (int k = 0; k < 12; ++k) {
    for (int n = 0; n < 30; ++n) ASSERT_EQ(mask(k, n), k == 5 && n == 17);
  }
}

TEST(EnergyMaskTest, KeepsLoudEventBins) {
  const FrontEndParams p;
  const SceneSpec spec = OneBurst(45, 0, 7);
  const DoaMap map = AnalyzeToDiffuseness(Synthesize(spec).audio, p);
  const MaskPlane mask = EnergyMask(map, p);
  std::vector<double> event_power;
  for (int k = 0; k < map.num_bins(); ++k) {
    for (int n = 0; n < map.num_windows(); ++n) {
      const double t = map.window_times_s[n];
      if (t > 0.31 && t < 0.69) event_power.push_back(map.power(k, n));
    }
  }
  std::sort(event_power.begin(), event_power.end());
  const double decile = event_power[event_power.size() * 9 / 10];
  int top = 0, kept = 0;
  for (int k = 0; k < map.num_bins(); ++k) {
    for (int n = 0; n < map.num_windows(); ++n) {
      const double t = map.window_times_s[n];
      if (!(t > 0.31 && t < 0.69) || map.power(k, n) < decile) continue;
      ++top;
      kept += mask(k, n);
    }
  }
  EXPECT_GT(static_cast<double>(kept) / top, 0.95);
}

TEST(EnergyMaskTest, InvariantToGain) {
  const FrontEndParams p;
  std::mt19937_64 rng(8);
  DoaMap map = EmptyMap(20, 40);
  std::exponential_distribution<double> expo;
  for (double& v : map.power.data()) v = expo(rng);
  DoaMap scaled = map;
  for (double& v : scaled.power.data()) v *= 1234.5;
  EXPECT_EQ(EnergyMask(map, p), EnergyMask(scaled, p));
}

TEST(DiffusenessMaskTest, StrictThreshold) {
  DoaMap map = EmptyMap(1, 3);
  map.diffuseness(0, 0) = 0.4999;
  map.diffuseness(0, 1) = 0.5;
  map.diffuseness(0, 2) = 0.9;
  const MaskPlane mask = DiffusenessMask(map, FrontEndParams{});
  EXPECT_EQ(mask(0, 0), 1);
  EXPECT_EQ(mask(0, 1), 0);
  EXPECT_EQ(mask(0, 2), 0);
}

TEST(DiffusenessMaskTest, PlaneWavePassesOmniFails) {
  const FrontEndParams p;
  const DoaMap plane = AnalyzeToDiffuseness(Synthesize(OneBurst(0, 0, 9)).audio, p);
  const MaskPlane energetic = EnergyMask(plane, p);
  const MaskPlane pass = DiffusenessMask(plane, p);
  for (size_t i = 0; i < pass.data().size(); ++i) {
    if (energetic.data()[i]) {
      ASSERT_EQ(pass.data()[i], 1);
    }
  }
  DoaMap omni = EmptyMap(5, 5);
  std::fill(omni.diffuseness.data().begin(), omni.diffuseness.data().end(), 1.0);
  const MaskPlane rejected = DiffusenessMask(omni, p);
  for (auto v : rejected.data()) ASSERT_EQ(v, 0);
}

TEST(VarianceMaskTest, ConstantAndWrappedPlanes) {
  const FrontEndParams p;
  DoaMap map = EmptyMap(10, 10);
  std::fill(map.azimuth.data().begin(), map.azimuth.data().end(), 1.0);
  std::fill(map.elevation.data().begin(), map.elevation.data().end(), 0.2);
  const MaskPlane constant = VarianceMask(map, p);
  for (auto v : constant.data()) ASSERT_EQ(v, 1);
  for (int k = 0; k < 10; ++k) {
    for (int n = 0; n < 10; ++n) {
      map.azimuth(k, n) = ((k + n) % 2 ? 175.0 : -175.0) * kRadiansFromDegrees;
    }
  }
  const MaskPlane wrapped = VarianceMask(map, p);
  for (auto v : wrapped.data()) ASSERT_EQ(v, 1);
}

TEST(VarianceMaskTest, RandomDirectionsRejected) {
  const FrontEndParams p;
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> az(-kPi, kPi), z(-1, 1);
  DoaMap map = EmptyMap(60, 200);
  for (size_t i = 0; i < map.azimuth.data().size(); ++i) {
    map.azimuth.data()[i] = az(rng);
    map.elevation.data()[i] = std::asin(z(rng));
  }
  const MaskPlane mask = VarianceMask(map, p);
  const double fraction =
      std::count(mask.data().begin(), mask.data().end(), 1) /
      static_cast<double>(mask.data().size());
  EXPECT_LT(fraction, 0.01);
}

TEST(MaskTest, MatchBruteForceOnRandomPlanes) {
  const FrontEndParams p;
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> u(0, 1);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 20; ++trial) {
    DoaMap map = EmptyMap(16, 16);
    const double centre = u(rng) * kTwoPi - kPi;
    for (size_t i = 0; i < map.azimuth.data().size(); ++i) {
      map.azimuth.data()[i] = WrapAngle(centre + 0.2 * normal(rng));
      map.elevation.data()[i] = std::clamp(0.1 * normal(rng), -kHalfPi, kHalfPi);
      map.power.data()[i] = u(rng) < 0.1 ? 0.0 : std::exp(3 * normal(rng));
      map.diffuseness.data()[i] = u(rng);
    }
    const MaskPlane energy = EnergyMask(map, p);
    const MaskPlane variance = VarianceMask(map, p);
    const MaskPlane diffuse = DiffusenessMask(map, p);
    ASSERT_EQ(energy, oracle::EnergyMask(map, p.energy_filter_length));
    ASSERT_EQ(variance, oracle::VarianceMask(map, p.std_mask_vicinity_radius,
                                             p.std_mask_norm_threshold));
    DoaMap masked = ApplyMask(ApplyMask(ApplyMask(map, energy), diffuse), variance);
    for (int k = 0; k < 16; ++k) {
      for (int n = 0; n < 16; ++n) {
        const bool expected = energy(k, n) && map.diffuseness(k, n) < 0.5 &&
                              variance(k, n);
        ASSERT_EQ(masked.valid(k, n), expected);
      }
    }
  }
}

TEST(MedianFilterTest, IsolatedBinInvalidated) {
  DoaMap map = EmptyMap(30, 30);
  std::fill(map.valid.data().begin(), map.valid.data().end(), 0);
  map.valid(15, 15) = 1;
  const DoaMap out = MedianFilter(map, FrontEndParams{});
  for (auto v : out.valid.data()) ASSERT_EQ(v, 0);
}

TEST(MedianFilterTest, ConstantRegionUnchanged) {
  DoaMap map = EmptyMap(30, 50);
  std::fill(map.azimuth.data().begin(), map.azimuth.data().end(), -2.0);
  std::fill(map.elevation.data().begin(), map.elevation.data().end(), 0.3);
  const DoaMap out = MedianFilter(map, FrontEndParams{});
  EXPECT_EQ(out.valid, map.valid);
  EXPECT_EQ(out.azimuth, map.azimuth);
  EXPECT_EQ(out.elevation, map.elevation);
}

TEST(MedianFilterTest, RemovesSparseOutliers) {
  FrontEndParams p;
  p.median_vicinity_radius_kn = {4, 4};
  std::mt19937_64 rng(16);
  std::uniform_real_distribution<double> u(0, 1);
  DoaMap map = EmptyMap(20, 40);
  const double az0 = 2.5, el0 = -0.4;
  for (size_t i = 0; i < map.azimuth.data().size(); ++i) {
    const bool outlier = u(rng) < 0.05;
    map.azimuth.data()[i] = outlier ? u(rng) * kTwoPi - kPi : az0;
    map.elevation.data()[i] = outlier ? std::asin(2 * u(rng) - 1) : el0;
  }
  const DoaMap out = MedianFilter(map, p);
  for (int k = 0; k < 20; ++k) {
    for (int n = 0; n < 40; ++n) {
      ASSERT_TRUE(out.valid(k, n));
      const Direction d{out.azimuth(k, n), out.elevation(k, n)};
      ASSERT_LT(CentralAngle(d, Direction{az0, el0}) * kDegreesFromRadians, 1.0);
      std::vector<double> az, el;
      for (int j = std::max(0, k - 4); j <= std::min(19, k + 4); ++j) {
        for (int m = std::max(0, n - 4); m <= std::min(39, n + 4); ++m) {
          az.push_back(map.azimuth(j, m));
          el.push_back(map.elevation(j, m));
        }
      }
      ASSERT_EQ(out.azimuth(k, n), oracle::CircularMedian(az));
      ASSERT_EQ(out.elevation(k, n), oracle::LinearMedian(el));
    }
  }
}

TEST(MedianFilterTest, RatioBoundaryCountsNeighboursOnly) {
  FrontEndParams p;
  p.median_vicinity_radius_kn = {1, 1};
  DoaMap map = EmptyMap(3, 3);
  std::fill(map.valid.data().begin(), map.valid.data().end(), 0);
  // Centre plus 4 of its 8 neighbours: ratio 4 / 8 = 0.5 passes.
  map.valid(1, 1) = map.valid(0, 0) = map.valid(0, 1) = map.valid(0, 2) =
      map.valid(1, 0) = 1;
  EXPECT_EQ(MedianFilter(map, p).valid(1, 1), 1);
  map.valid(1, 0) = 0;
  EXPECT_EQ(MedianFilter(map, p).valid(1, 1), 0);
}

TEST(PlaneDumpTest, RoundTrip) {
  const std::string dir = ::testing::TempDir() + "/seld_plane_dump";
  std::filesystem::create_directories(dir);
  RealPlane r(3, 4);
  MaskPlane m(3, 4, 0);
  for (int i = 0; i < 12; ++i) {
    r.data()[i] = std::sin(i) * 1e-300 + i;
    m.data()[i] = i % 3 == 0;
  }
  DumpPlane(dir, "alpha", r);
  DumpPlane(dir, "beta", m);
  EXPECT_EQ(ReadRealPlane(dir + "/alpha.plane"), r);
  EXPECT_EQ(ReadMaskPlane(dir + "/beta.plane"), m);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace seld
