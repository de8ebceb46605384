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

#include "seld/config.h"

#include <cstdio>
#include <fstream>
#include <string>

#include "gtest/gtest.h"
#include "seld/error.h"

namespace seld {
namespace {

TEST(ConfigTest, DefaultsMatchSelectedConfiguration) {
  const FrontEndParams p;
  EXPECT_EQ(p.stft_window_size, 256);
  EXPECT_EQ(p.analysis_freq_range_hz[0], 0.0);
  EXPECT_EQ(p.analysis_freq_range_hz[1], 8000.0);
  EXPECT_EQ(p.time_avg_radius_r, 10);
  EXPECT_EQ(p.diffuseness_threshold_psi_max, 0.5);
  EXPECT_EQ(p.energy_filter_length, 11);
  EXPECT_EQ(p.std_mask_vicinity_radius, 2);
  EXPECT_EQ(p.std_mask_norm_threshold, 0.15);
  EXPECT_EQ(p.median_min_ratio_b_min, 0.5);
  EXPECT_EQ(p.median_vicinity_radius_kn[0], 20);
  EXPECT_EQ(p.median_vicinity_radius_kn[1], 20);
  EXPECT_EQ(p.resample_min_bins_k_min, 1);
  EXPECT_EQ(p.overlap_std_threshold_sigma_max, 10.0);
  EXPECT_EQ(p.group_max_angle_deg, 20.0);
  EXPECT_EQ(p.group_max_frame_dist, 20);
  EXPECT_EQ(p.event_min_length, 8);
  EXPECT_EQ(p.frame_hop_s, 0.02);
  EXPECT_EQ(p.sample_rate_hz, 48000.0);
  EXPECT_EQ(p.stft_hop, 128);
  EXPECT_EQ(p.speed_of_sound_c, 343.0);
  EXPECT_EQ(p.impedance_z0, 413.3);
  EXPECT_NO_THROW(ValidateParams(p));
}

TEST(ConfigTest, EmptyTextGivesDefaults) {
  EXPECT_EQ(ParseParams(""), FrontEndParams{});
  EXPECT_EQ(ParseParams("# only a comment\n\n").diffuseness_threshold_psi_max,
            0.5);
}

TEST(ConfigTest, SettingDefaultValueIsIdentity) {
  EXPECT_EQ(ParseParams("event_min_length = 8\n"), FrontEndParams{});
}

TEST(ConfigTest, ParsesScalarsAndPairs) {
  const FrontEndParams p = ParseParams(
      "time_avg_radius_r = 4\n"
      "analysis_freq_range_hz = 100, 6000  # trailing comment\n"
      "median_vicinity_radius_kn = 5,7\n"
      "impedance_z0=400\n");
  EXPECT_EQ(p.time_avg_radius_r, 4);
  EXPECT_EQ(p.analysis_freq_range_hz[0], 100.0);
  EXPECT_EQ(p.analysis_freq_range_hz[1], 6000.0);
  EXPECT_EQ(p.median_vicinity_radius_kn[0], 5);
  EXPECT_EQ(p.median_vicinity_radius_kn[1], 7);
  EXPECT_EQ(p.impedance_z0, 400.0);
}

TEST(ConfigTest, RatioAboveOneIsRangeError) {
  try {
    ParseParams("median_min_ratio_b_min = 1.5\n");
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("median_min_ratio_b_min"),
              std::string::npos);
  }
}

TEST(ConfigTest, RejectsInvalidInput) {
  EXPECT_THROW(ParseParams("no_such_key = 1\n"), InputError);
  EXPECT_THROW(ParseParams("event_min_length = 8\nevent_min_length = 9\n"),
               InputError);
  EXPECT_THROW(ParseParams("event_min_length = eight\n"), InputError);
  EXPECT_THROW(ParseParams("event_min_length = 8.5\n"), InputError);
  EXPECT_THROW(ParseParams("just words\n"), InputError);
  EXPECT_THROW(ParseParams("[section]\n"), InputError);
  EXPECT_THROW(ParseParams("analysis_freq_range_hz = 5000, 100\n"), InputError);
  EXPECT_THROW(ParseParams("analysis_freq_range_hz = 0, 30000\n"), InputError);
  EXPECT_THROW(ParseParams("analysis_freq_range_hz = 100\n"), InputError);
  EXPECT_THROW(ParseParams("diffuseness_threshold_psi_max = -0.1\n"), InputError);
  EXPECT_THROW(ParseParams("stft_window_size = 255\n"), InputError);
  EXPECT_THROW(ParseParams("energy_filter_length = 10\n"), InputError);
  EXPECT_THROW(ParseParams("impedance_z0 = 0\n"), InputError);
  EXPECT_THROW(ParseParams("stft_hop = 0\n"), InputError);
  EXPECT_THROW(ParseParams("frame_hop_s = nan\n"), InputError);
}

TEST(ConfigTest, SerializeRoundTrips) {
  FrontEndParams p;
  p.impedance_z0 = 1.0 / 3.0;
  p.analysis_freq_range_hz = {123.456, 7000.0};
  p.median_vicinity_radius_kn = {3, 9};
  p.freq_avg_radius = 0;
  EXPECT_EQ(ParseParams(SerializeParams(p)), p);
  EXPECT_EQ(ParseParams(SerializeParams(FrontEndParams{})), FrontEndParams{});
}

TEST(ConfigTest, LoadsFromFile) {
  const std::string path = ::testing::TempDir() + "/seld_config_test.cfg";
  {
    std::ofstream out(path);
    out << "stft_hop = 64\n";
  }
  EXPECT_EQ(LoadParams(path).stft_hop, 64);
  std::remove(path.c_str());
  EXPECT_THROW(LoadParams(path), InputError);
}

}  // namespace
}  // namespace seld
