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
#include <bit>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "seld/ambisonics.h"
#include "seld/circular_stats.h"
#include "seld/error.h"

namespace seld {

namespace {

constexpr double kInvSqrt3 = 1.0 / std::numbers::sqrt3;

// Sum of |plane| over [n - radius, n + radius] along each row, truncated.
RealPlane BoxSumAlongWindows(const RealPlane& plane, int radius) {
  RealPlane out(plane.rows(), plane.cols());
  std::vector<double> prefix(plane.cols() + 1);
  for (int k = 0; k < plane.rows(); ++k) {
    prefix[0] = 0.0;
    for (int n = 0; n < plane.cols(); ++n) prefix[n + 1] = prefix[n] + plane(k, n);
    for (int n = 0; n < plane.cols(); ++n) {
      const int lo = std::max(0, n - radius);
      const int hi = std::min(plane.cols() - 1, n + radius);
      out(k, n) = prefix[hi + 1] - prefix[lo];
    }
  }
  return out;
}

RealPlane BoxSumAlongBins(const RealPlane& plane, int radius) {
  RealPlane out(plane.rows(), plane.cols());
  for (int k = 0; k < plane.rows(); ++k) {
    const int lo = std::max(0, k - radius);
    const int hi = std::min(plane.rows() - 1, k + radius);
    for (int j = lo; j <= hi; ++j) {
      for (int n = 0; n < plane.cols(); ++n) out(k, n) += plane(j, n);
    }
  }
  return out;
}

// Truncated moving average; the in-bounds count is separable.
RealPlane MovingAverage(const RealPlane& plane, int bin_radius,
                        int window_radius) {
  RealPlane sum = BoxSumAlongBins(BoxSumAlongWindows(plane, window_radius),
                                  bin_radius);
  for (int k = 0; k < plane.rows(); ++k) {
    const int bins = std::min(plane.rows() - 1, k + bin_radius) -
                     std::max(0, k - bin_radius) + 1;
    for (int n = 0; n < plane.cols(); ++n) {
      const int windows = std::min(plane.cols() - 1, n + window_radius) -
                          std::max(0, n - window_radius) + 1;
      sum(k, n) /= static_cast<double>(bins * windows);
    }
  }
  return sum;
}

}  // namespace

DoaMap IntensityDoa(const BandView& band, const FrontEndParams& params) {
  const int rows = band.num_bins;
  const int cols = band.num_windows();
  DoaMap map;
  map.azimuth = RealPlane(rows, cols);
  map.elevation = RealPlane(rows, cols);
  map.energy = RealPlane(rows, cols);
  map.power = RealPlane(rows, cols);
  for (int d = 0; d < 3; ++d) {
    map.intensity[d] = RealPlane(rows, cols);
    map.flux[d] = RealPlane(rows, cols);
  }
  map.valid = MaskPlane(rows, cols, 1);
  map.first_bin = band.first_bin;
  map.bin_freqs_hz.resize(rows);
  for (int k = 0; k < rows; ++k) map.bin_freqs_hz[k] = band.bin_freq_hz(k);
  map.window_times_s = band.spectrogram->window_times_s();

  const double inv_z0 = 1.0 / params.impedance_z0;
  const double energy_scale =
      1.0 / (2.0 * params.impedance_z0 * params.speed_of_sound_c);
  for (int k = 0; k < rows; ++k) {
    for (int n = 0; n < cols; ++n) {
      const std::complex<double> w = band.at(kW, k, n);
      const std::array<std::complex<double>, 3> dipoles = {
          band.at(kX, k, n) * kInvSqrt3, band.at(kY, k, n) * kInvSqrt3,
          band.at(kZ, k, n) * kInvSqrt3};
      double power = std::norm(w);
      std::array<double, 3> flux{};
      for (int d = 0; d < 3; ++d) {
        power += std::norm(dipoles[d]);
        // Re{B_d B_w*}
        flux[d] = dipoles[d].real() * w.real() + dipoles[d].imag() * w.imag();
        map.flux[d](k, n) = flux[d];
        map.intensity[d](k, n) = -inv_z0 * flux[d];
      }
      map.power(k, n) = power;
      map.energy(k, n) = power * energy_scale;
      // Omega = angle(-I) = angle(flux).
      const double horizontal = std::hypot(flux[0], flux[1]);
      if (horizontal == 0.0 && flux[2] == 0.0) {
        map.azimuth(k, n) = 0.0;
        map.elevation(k, n) = 0.0;
      } else {
        map.azimuth(k, n) = WrapAngle(std::atan2(flux[1], flux[0]));
        map.elevation(k, n) = std::atan2(flux[2], horizontal);
      }
    }
  }
  return map;
}

RealPlane DiffusenessUnclamped(const DoaMap& map, const FrontEndParams& params) {
  const int q = params.freq_avg_radius;
  const int r = params.time_avg_radius_r;
  const RealPlane mean_power = MovingAverage(map.power, q, r);
  std::array<RealPlane, 3> mean_flux;
  for (int d = 0; d < 3; ++d) mean_flux[d] = MovingAverage(map.flux[d], q, r);

  RealPlane psi(map.num_bins(), map.num_windows());
  for (int k = 0; k < psi.rows(); ++k) {
    for (int n = 0; n < psi.cols(); ++n) {
      const double p = mean_power(k, n);
      if (p <= 0.0) {
        psi(k, n) = 1.0;
        continue;
      }
      const double norm = std::sqrt(mean_flux[0](k, n) * mean_flux[0](k, n) +
                                    mean_flux[1](k, n) * mean_flux[1](k, n) +
                                    mean_flux[2](k, n) * mean_flux[2](k, n));
      // |<I>| / (c <E>) = (|<flux>| / Z0) / (<power> / (2 Z0)).
      psi(k, n) = 1.0 - 2.0 * norm / p;
    }
  }
  return psi;
}

DoaMap WithDiffuseness(DoaMap map, const FrontEndParams& params) {
  map.diffuseness = DiffusenessUnclamped(map, params);
  for (double& v : map.diffuseness.data()) v = std::clamp(v, 0.0, 1.0);
  return map;
}

MaskPlane EnergyMask(const DoaMap& map, const FrontEndParams& params) {
  const int rows = map.num_bins();
  const int cols = map.num_windows();
  const int half = params.energy_filter_length / 2;
  const double sigma = params.energy_filter_length / 4.0;
  std::vector<double> weights((2 * half + 1) * (2 * half + 1));
  for (int dk = -half; dk <= half; ++dk) {
    for (int dn = -half; dn <= half; ++dn) {
      weights[(dk + half) * (2 * half + 1) + (dn + half)] =
          std::exp(-(dk * dk + dn * dn) / (2.0 * sigma * sigma));
    }
  }
  RealPlane log_power(rows, cols);
  for (size_t i = 0; i < log_power.data().size(); ++i) {
    const double p = map.power.data()[i];
    log_power.data()[i] =
        p > 0.0 ? std::log(p) : -std::numeric_limits<double>::infinity();
  }

  MaskPlane mask(rows, cols, 0);
  for (int k = 0; k < rows; ++k) {
    for (int n = 0; n < cols; ++n) {
      if (!(map.power(k, n) > 0.0)) continue;
      const double center = log_power(k, n);
      // Sign of (weighted mean - centre); the positive normalization by the
      // in-bounds weight sum does not change it. Differences keep constant
      // neighbourhoods exactly at zero.
      double excess = 0.0;
      for (int j = std::max(0, k - half); j <= std::min(rows - 1, k + half); ++j) {
        for (int m = std::max(0, n - half); m <= std::min(cols - 1, n + half);
             ++m) {
          const double w =
              weights[(j - k + half) * (2 * half + 1) + (m - n + half)];
          excess += w * (log_power(j, m) - center);
        }
      }
      mask(k, n) = excess < 0.0 ? 1 : 0;
    }
  }
  return mask;
}

MaskPlane DiffusenessMask(const DoaMap& map, const FrontEndParams& params) {
  MaskPlane mask(map.num_bins(), map.num_windows(), 0);
  for (size_t i = 0; i < mask.data().size(); ++i) {
    mask.data()[i] =
        map.diffuseness.data()[i] < params.diffuseness_threshold_psi_max ? 1 : 0;
  }
  return mask;
}

MaskPlane VarianceMask(const DoaMap& map, const FrontEndParams& params) {
  const int rows = map.num_bins();
  const int cols = map.num_windows();
  const int radius = params.std_mask_vicinity_radius;
  RealPlane cos_az(rows, cols), sin_az(rows, cols);
  for (size_t i = 0; i < cos_az.data().size(); ++i) {
    cos_az.data()[i] = std::cos(map.azimuth.data()[i]);
    sin_az.data()[i] = std::sin(map.azimuth.data()[i]);
  }
  MaskPlane mask(rows, cols, 0);
  for (int k = 0; k < rows; ++k) {
    for (int n = 0; n < cols; ++n) {
      double c = 0.0, s = 0.0, el_sum = 0.0, el_sq = 0.0;
      int count = 0;
      for (int j = std::max(0, k - radius); j <= std::min(rows - 1, k + radius);
           ++j) {
        for (int m = std::max(0, n - radius);
             m <= std::min(cols - 1, n + radius); ++m) {
          c += cos_az(j, m);
          s += sin_az(j, m);
          el_sum += map.elevation(j, m);
          ++count;
        }
      }
      const double el_mean = el_sum / count;
      for (int j = std::max(0, k - radius); j <= std::min(rows - 1, k + radius);
           ++j) {
        for (int m = std::max(0, n - radius);
             m <= std::min(cols - 1, n + radius); ++m) {
          const double d = map.elevation(j, m) - el_mean;
          el_sq += d * d;
        }
      }
      const double resultant = std::min(1.0, std::hypot(c, s) / count);
      const double sigma_az =
          resultant > 0.0 ? std::sqrt(-2.0 * std::log(resultant))
                          : std::numeric_limits<double>::infinity();
      const double sigma_el = std::sqrt(el_sq / count);
      mask(k, n) = (0.5 * sigma_az + sigma_el) / kPi <
                           params.std_mask_norm_threshold
                       ? 1
                       : 0;
    }
  }
  return mask;
}

DoaMap ApplyMask(DoaMap map, const MaskPlane& mask) {
  for (size_t i = 0; i < map.valid.data().size(); ++i) {
    map.valid.data()[i] = (map.valid.data()[i] && mask.data()[i]) ? 1 : 0;
  }
  return map;
}

DoaMap MedianFilter(DoaMap map, const FrontEndParams& params) {
  const int rows = map.num_bins();
  const int cols = map.num_windows();
  const int rk = params.median_vicinity_radius_kn[0];
  const int rn = params.median_vicinity_radius_kn[1];

  // Summed-area table of the incoming valid plane.
  std::vector<int> table(static_cast<size_t>(rows + 1) * (cols + 1), 0);
  auto at = [&](int k, int n) -> int& {
    return table[static_cast<size_t>(k) * (cols + 1) + n];
  };
  for (int k = 0; k < rows; ++k) {
    for (int n = 0; n < cols; ++n) {
      at(k + 1, n + 1) =
          map.valid(k, n) + at(k, n + 1) + at(k + 1, n) - at(k, n);
    }
  }

  const RealPlane azimuth = map.azimuth;
  const RealPlane elevation = map.elevation;
  const MaskPlane valid = map.valid;
  std::vector<double> az, el;
  for (int k = 0; k < rows; ++k) {
    for (int n = 0; n < cols; ++n) {
      if (!valid(k, n)) continue;
      const int k0 = std::max(0, k - rk), k1 = std::min(rows - 1, k + rk);
      const int n0 = std::max(0, n - rn), n1 = std::min(cols - 1, n + rn);
      const int neighbours = (k1 - k0 + 1) * (n1 - n0 + 1) - 1;
      const int valid_neighbours =
          at(k1 + 1, n1 + 1) - at(k0, n1 + 1) - at(k1 + 1, n0) + at(k0, n0) - 1;
      if (neighbours == 0 ||
          static_cast<double>(valid_neighbours) / neighbours <
              params.median_min_ratio_b_min) {
        map.valid(k, n) = 0;
        continue;
      }
      az.clear();
      el.clear();
      for (int j = k0; j <= k1; ++j) {
        for (int m = n0; m <= n1; ++m) {
          if (!valid(j, m)) continue;
          az.push_back(azimuth(j, m));
          el.push_back(elevation(j, m));
        }
      }
      map.azimuth(k, n) = CircularMedian(az);
      map.elevation(k, n) = LinearMedian(el);
    }
  }
  return map;
}

DoaAnalysis AnalyzeDoa(const Spectrogram& spectrogram,
                       const FrontEndParams& params) {
  const BandView band = BandLimit(spectrogram, params.analysis_freq_range_hz);
  DoaAnalysis analysis;
  analysis.map = WithDiffuseness(IntensityDoa(band, params), params);
  analysis.energy_mask = EnergyMask(analysis.map, params);
  analysis.diffuseness_mask = DiffusenessMask(analysis.map, params);
  analysis.variance_mask = VarianceMask(analysis.map, params);
  DoaMap masked = ApplyMask(std::move(analysis.map), analysis.energy_mask);
  masked = ApplyMask(std::move(masked), analysis.diffuseness_mask);
  masked = ApplyMask(std::move(masked), analysis.variance_mask);
  analysis.map = MedianFilter(std::move(masked), params);
  return analysis;
}

namespace {

constexpr char kPlaneMagic[] = "SELDPLANE 1";

template <typename T>
void WritePlaneFile(const std::string& directory, const std::string& name,
                    const Plane<T>& plane, const char* dtype) {
  std::filesystem::create_directories(directory);
  const std::string path =
      (std::filesystem::path(directory) / (name + ".plane")).string();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << kPlaneMagic << "\nname " << name << "\nrows " << plane.rows()
      << "\ncols " << plane.cols() << "\ndtype " << dtype << "\nend\n";
  static_assert(std::endian::native == std::endian::little,
                "plane dumps assume a little-endian host");
  out.write(reinterpret_cast<const char*>(plane.data().data()),
            static_cast<std::streamsize>(plane.data().size() * sizeof(T)));
}

template <typename T>
Plane<T> ReadPlaneFile(const std::string& path, const std::string& dtype) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::string line, key, value;
  std::getline(in, line);
  if (line != kPlaneMagic) throw InputError("'" + path + "' is not a plane dump");
  int rows = -1, cols = -1;
  std::string found_dtype;
  while (std::getline(in, line) && line != "end") {
    std::istringstream fields(line);
    fields >> key >> value;
    if (key == "rows") rows = std::stoi(value);
    if (key == "cols") cols = std::stoi(value);
    if (key == "dtype") found_dtype = value;
  }
  if (rows < 0 || cols < 0 || found_dtype != dtype) {
    throw InputError("bad plane header in '" + path + "'");
  }
  Plane<T> plane(rows, cols);
  in.read(reinterpret_cast<char*>(plane.data().data()),
          static_cast<std::streamsize>(plane.data().size() * sizeof(T)));
  if (!in) throw InputError("truncated plane data in '" + path + "'");
  return plane;
}

}  // namespace

void DumpPlane(const std::string& directory, const std::string& name,
               const RealPlane& plane) {
  WritePlaneFile(directory, name, plane, "float64");
}

void DumpPlane(const std::string& directory, const std::string& name,
               const MaskPlane& plane) {
  WritePlaneFile(directory, name, plane, "uint8");
}

void DumpAnalysis(const DoaAnalysis& analysis, const std::string& directory) {
  const DoaMap& map = analysis.map;
  DumpPlane(directory, "azimuth", map.azimuth);
  DumpPlane(directory, "elevation", map.elevation);
  DumpPlane(directory, "energy", map.energy);
  DumpPlane(directory, "diffuseness", map.diffuseness);
  DumpPlane(directory, "energy_mask", analysis.energy_mask);
  DumpPlane(directory, "diffuseness_mask", analysis.diffuseness_mask);
  DumpPlane(directory, "variance_mask", analysis.variance_mask);
  DumpPlane(directory, "valid", map.valid);
}

RealPlane ReadRealPlane(const std::string& path) {
  return ReadPlaneFile<double>(path, "float64");
}

MaskPlane ReadMaskPlane(const std::string& path) {
  return ReadPlaneFile<std::uint8_t>(path, "uint8");
}

}  // namespace seld
