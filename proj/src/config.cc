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
#include <functional>
#include <set>
#include <sstream>
#include <type_traits>
#include <vector>

#include "seld/error.h"
#include "seld/key_value.h"

namespace seld {

namespace {

std::string FormatDouble(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct Field {
  const char* key;
  std::function<void(FrontEndParams&, const KeyValueEntry&)> parse;
  std::function<std::string(const FrontEndParams&)> format;
};

int ToInt(const KeyValueEntry& e) {
  const long long v = ParseInteger(e);
  if (v < -2147483647LL || v > 2147483647LL) {
    throw InputError("value out of range for key '" + e.key + "'");
  }
  return static_cast<int>(v);
}

template <typename T>
std::array<T, 2> ToPair(const KeyValueEntry& e) {
  const std::vector<double> v = ParseDoubleList(e);
  if (v.size() != 2) {
    throw InputError("key '" + e.key + "' expects two comma-separated values");
  }
  if constexpr (std::is_same_v<T, int>) {
    for (double x : v) {
      if (x != static_cast<double>(static_cast<int>(x))) {
        throw InputError("key '" + e.key + "' expects integers");
      }
    }
  }
  return {static_cast<T>(v[0]), static_cast<T>(v[1])};
}

Field IntField(const char* key, int FrontEndParams::*member) {
  return {key,
          [member](FrontEndParams& p, const KeyValueEntry& e) {
            p.*member = ToInt(e);
          },
          [member](const FrontEndParams& p) { return std::to_string(p.*member); }};
}

Field DoubleField(const char* key, double FrontEndParams::*member) {
  return {key,
          [member](FrontEndParams& p, const KeyValueEntry& e) {
            p.*member = ParseDouble(e);
          },
          [member](const FrontEndParams& p) { return FormatDouble(p.*member); }};
}

const std::vector<Field>& Fields() {
  static const std::vector<Field> fields = {
      IntField("stft_window_size", &FrontEndParams::stft_window_size),
      Field{"analysis_freq_range_hz",
            [](FrontEndParams& p, const KeyValueEntry& e) {
              p.analysis_freq_range_hz = ToPair<double>(e);
            },
            [](const FrontEndParams& p) {
              return FormatDouble(p.analysis_freq_range_hz[0]) + ", " +
                     FormatDouble(p.analysis_freq_range_hz[1]);
            }},
      IntField("time_avg_radius_r", &FrontEndParams::time_avg_radius_r),
      IntField("freq_avg_radius", &FrontEndParams::freq_avg_radius),
      DoubleField("diffuseness_threshold_psi_max", &FrontEndParams::diffuseness_threshold_psi_max),
      IntField("energy_filter_length", &FrontEndParams::energy_filter_length),
      IntField("std_mask_vicinity_radius", &FrontEndParams::std_mask_vicinity_radius),
      DoubleField("std_mask_norm_threshold", &FrontEndParams::std_mask_norm_threshold),
      DoubleField("median_min_ratio_b_min", &FrontEndParams::median_min_ratio_b_min),
      Field{"median_vicinity_radius_kn",
            [](FrontEndParams& p, const KeyValueEntry& e) {
              p.median_vicinity_radius_kn = ToPair<int>(e);
            },
            [](const FrontEndParams& p) {
              return std::to_string(p.median_vicinity_radius_kn[0]) + ", " +
                     std::to_string(p.median_vicinity_radius_kn[1]);
            }},
      IntField("resample_min_bins_k_min", &FrontEndParams::resample_min_bins_k_min),
      DoubleField("overlap_std_threshold_sigma_max", &FrontEndParams::overlap_std_threshold_sigma_max),
      DoubleField("group_max_angle_deg", &FrontEndParams::group_max_angle_deg),
      IntField("group_max_frame_dist", &FrontEndParams::group_max_frame_dist),
      IntField("event_min_length", &FrontEndParams::event_min_length),
      DoubleField("frame_hop_s", &FrontEndParams::frame_hop_s),
      DoubleField("sample_rate_hz", &FrontEndParams::sample_rate_hz),
      IntField("stft_hop", &FrontEndParams::stft_hop),
      DoubleField("speed_of_sound_c", &FrontEndParams::speed_of_sound_c),
      DoubleField("impedance_z0", &FrontEndParams::impedance_z0),
  };
  return fields;
}


void Require(bool ok, const char* key, const std::string& what) {
  if (!ok) throw InputError("out-of-range value for key '" + std::string(key) +
                            "': " + what);
}

}  // namespace

void ValidateParams(const FrontEndParams& p) {
  Require(p.stft_window_size >= 2 && p.stft_window_size % 2 == 0,
          "stft_window_size", "must be an even number >= 2");
  Require(p.stft_hop >= 1, "stft_hop", "must be >= 1");
  Require(p.sample_rate_hz > 0, "sample_rate_hz", "must be positive");
  const double nyquist = 0.5 * p.sample_rate_hz;
  Require(p.analysis_freq_range_hz[0] >= 0.0 &&
              p.analysis_freq_range_hz[0] < p.analysis_freq_range_hz[1] &&
              p.analysis_freq_range_hz[1] <= nyquist,
          "analysis_freq_range_hz", "need 0 <= low < high <= Nyquist");
  Require(p.time_avg_radius_r >= 0, "time_avg_radius_r", "must be >= 0");
  Require(p.freq_avg_radius >= 0, "freq_avg_radius", "must be >= 0");
  Require(p.diffuseness_threshold_psi_max >= 0.0 &&
              p.diffuseness_threshold_psi_max <= 1.0,
          "diffuseness_threshold_psi_max", "must lie in [0, 1]");
  Require(p.energy_filter_length >= 1 && p.energy_filter_length % 2 == 1,
          "energy_filter_length", "must be an odd number >= 1");
  Require(p.std_mask_vicinity_radius >= 0, "std_mask_vicinity_radius",
          "must be >= 0");
  Require(p.std_mask_norm_threshold >= 0.0, "std_mask_norm_threshold",
          "must be >= 0");
  Require(p.median_min_ratio_b_min >= 0.0 && p.median_min_ratio_b_min <= 1.0,
          "median_min_ratio_b_min", "must lie in [0, 1]");
  Require(p.median_vicinity_radius_kn[0] >= 0 &&
              p.median_vicinity_radius_kn[1] >= 0,
          "median_vicinity_radius_kn", "radii must be >= 0");
  Require(p.resample_min_bins_k_min >= 0, "resample_min_bins_k_min",
          "must be >= 0");
  Require(p.overlap_std_threshold_sigma_max >= 0.0,
          "overlap_std_threshold_sigma_max", "must be >= 0");
  Require(p.group_max_angle_deg >= 0.0 && p.group_max_angle_deg <= 180.0,
          "group_max_angle_deg", "must lie in [0, 180]");
  Require(p.group_max_frame_dist >= 0, "group_max_frame_dist", "must be >= 0");
  Require(p.event_min_length >= 0, "event_min_length", "must be >= 0");
  Require(p.frame_hop_s > 0.0, "frame_hop_s", "must be positive");
  Require(p.speed_of_sound_c > 0.0, "speed_of_sound_c", "must be positive");
  Require(p.impedance_z0 > 0.0, "impedance_z0", "must be positive");
}

FrontEndParams ParseParams(std::string_view text, std::string_view source) {
  const auto sections = ParseKeyValue(text, source);
  if (sections.size() > 1) {
    throw InputError(std::string(source) + ":" +
                     std::to_string(sections[1].line) +
                     ": sections are not allowed in a config file");
  }
  FrontEndParams params;
  std::set<std::string> seen;
  for (const KeyValueEntry& entry : sections.front().entries) {
    const Field* field = nullptr;
    for (const Field& f : Fields()) {
      if (entry.key == f.key) field = &f;
    }
    if (field == nullptr) {
      throw InputError(std::string(source) + ":" + std::to_string(entry.line) +
                       ": unknown key '" + entry.key + "'");
    }
    if (!seen.insert(entry.key).second) {
      throw InputError(std::string(source) + ":" + std::to_string(entry.line) +
                       ": duplicate key '" + entry.key + "'");
    }
    field->parse(params, entry);
  }
  ValidateParams(params);
  return params;
}

FrontEndParams LoadParams(const std::string& path) {
  return ParseParams(ReadTextFile(path), path);
}

std::string SerializeParams(const FrontEndParams& params) {
  std::ostringstream out;
  out << "# SELD parametric front-end configuration\n";
  for (const Field& f : Fields()) {
    out << f.key << " = " << f.format(params) << "\n";
  }
  return out.str();
}

}  // namespace seld
