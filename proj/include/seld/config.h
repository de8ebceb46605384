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

#ifndef SELD_CONFIG_H_
#define SELD_CONFIG_H_

#include <array>
#include <string>
#include <string_view>

namespace seld {

// Every tunable of the parametric front-end. Defaults are the selected
// configuration: analysis parameters first, association parameters second,
// then the audio and physical constants.
struct FrontEndParams {
  // DOA analysis.
  int stft_window_size = 256;                             // samples
  std::array<double, 2> analysis_freq_range_hz = {0.0, 8000.0};
  int time_avg_radius_r = 10;                             // STFT windows
  int freq_avg_radius = 3;                                // STFT bins
  double diffuseness_threshold_psi_max = 0.5;
  int energy_filter_length = 11;                          // bins
  int std_mask_vicinity_radius = 2;                       // bins
  double std_mask_norm_threshold = 0.15;
  double median_min_ratio_b_min = 0.5;
  std::array<int, 2> median_vicinity_radius_kn = {20, 20};  // (bins, windows)

  // Association.
  int resample_min_bins_k_min = 1;
  double overlap_std_threshold_sigma_max = 10.0;          // degrees
  double group_max_angle_deg = 20.0;                      // degrees
  int group_max_frame_dist = 20;                          // frames
  int event_min_length = 8;                               // frames
  double frame_hop_s = 0.02;

  // Audio and physics.
  double sample_rate_hz = 48000.0;
  int stft_hop = 128;                                     // samples
  double speed_of_sound_c = 343.0;                        // m/s
  double impedance_z0 = 413.3;                            // kg/(m^2 s)

  bool operator==(const FrontEndParams&) const = default;
};

// Throws InputError naming the first offending key.
void ValidateParams(const FrontEndParams& params);

// Parses the key = value dialect on top of the defaults. Unknown keys,
// duplicate keys, sections, malformed lines and out-of-range values are
// rejected with InputError.
FrontEndParams ParseParams(std::string_view text,
                           std::string_view source = "<config>");
FrontEndParams LoadParams(const std::string& path);

// Writes every key; ParseParams(SerializeParams(p)) == p.
std::string SerializeParams(const FrontEndParams& params);

}  // namespace seld

#endif  // SELD_CONFIG_H_
