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

#ifndef SELD_PARAMETRIC_ANALYSIS_H_
#define SELD_PARAMETRIC_ANALYSIS_H_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "seld/config.h"
#include "seld/stft.h"

namespace seld {

// Dense [k][n] matrix (frequency bin major).
template <typename T>
class Plane {
 public:
  Plane() = default;
  Plane(int rows, int cols, T fill = T{})
      : rows_(rows), cols_(cols),
        data_(static_cast<size_t>(rows) * cols, fill) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  T& operator()(int k, int n) { return data_[static_cast<size_t>(k) * cols_ + n]; }
  const T& operator()(int k, int n) const {
    return data_[static_cast<size_t>(k) * cols_ + n];
  }
  const std::vector<T>& data() const { return data_; }
  std::vector<T>& data() { return data_; }

  bool operator==(const Plane&) const = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

using RealPlane = Plane<double>;
using MaskPlane = Plane<std::uint8_t>;

// Per-bin parametric description of a band-limited spectrogram.
struct DoaMap {
  RealPlane azimuth;      // radians, (-pi, pi]
  RealPlane elevation;    // radians, [-pi/2, pi/2]
  RealPlane energy;       // E(k,n), J/m^3
  RealPlane diffuseness;  // [0, 1]; empty until WithDiffuseness
  std::array<RealPlane, 3> intensity;  // active intensity I(k,n)
  // Z0- and c-free versions of the above: power = |B_w|^2 + |B_xyz|^2 and
  // flux = Re{B_xyz B_w*}, with B_xyz the un-scaled (SN3D) dipoles. Every
  // angle, ratio and mask is derived from these so that Z0 and c cancel.
  RealPlane power;
  std::array<RealPlane, 3> flux;
  MaskPlane valid;  // running conjunction of the applied masks

  int first_bin = 0;  // absolute STFT bin of row 0
  std::vector<double> bin_freqs_hz;
  std::vector<double> window_times_s;

  int num_bins() const { return azimuth.rows(); }
  int num_windows() const { return azimuth.cols(); }
};

// Active intensity, DOA and energy density per bin of an N3D spectrogram
// band. The DOA points towards the source of a plane wave. Bins with zero
// intensity get direction (0, 0). All bins start valid.
DoaMap IntensityDoa(const BandView& band, const FrontEndParams& params);

// Psi = 1 - |<I>| / (c <E>) with <.> a moving average over
// [n - r, n + r] x [k - q, k + q], truncated at the edges, r =
// time_avg_radius_r and q = freq_avg_radius. Not clamped; <E> = 0 gives 1.
RealPlane DiffusenessUnclamped(const DoaMap& map, const FrontEndParams& params);

// Fills the diffuseness plane, clamped to [0, 1].
DoaMap WithDiffuseness(DoaMap map, const FrontEndParams& params);

// Gaussian adaptive threshold on the energy density: a bin passes iff its
// log energy strictly exceeds the Gaussian-weighted mean of the log energy
// over the square energy_filter_length neighbourhood (sigma = length / 4,
// weights renormalized over in-bounds bins). Equivalently E exceeds its local
// weighted geometric mean. Zero-energy bins never pass.
MaskPlane EnergyMask(const DoaMap& map, const FrontEndParams& params);

// Psi < Psi_max (strict).
MaskPlane DiffusenessMask(const DoaMap& map, const FrontEndParams& params);

// (sigma_az / 2 + sigma_el) / pi < std_mask_norm_threshold (strict), with the
// circular azimuth std and ordinary elevation std taken over the square
// vicinity of radius std_mask_vicinity_radius.
MaskPlane VarianceMask(const DoaMap& map, const FrontEndParams& params);

// valid &= mask.
DoaMap ApplyMask(DoaMap map, const MaskPlane& mask);

// Vicinity-gated median filter. For each valid bin the valid neighbours in
// the (2 Rk + 1) x (2 Rn + 1) vicinity are counted, the centre excluded, and
// divided by the number of in-bounds neighbours. If that ratio reaches
// B_min the direction is replaced by the circular azimuth median and the
// elevation median over the valid bins of the vicinity (centre included);
// otherwise the bin is invalidated. Invalid bins are left untouched.
DoaMap MedianFilter(DoaMap map, const FrontEndParams& params);

// Full DOA analysis of an N3D spectrogram: band limiting, intensity DOA,
// diffuseness, the three masks and the median filter.
struct DoaAnalysis {
  DoaMap map;  // median-filtered state
  MaskPlane energy_mask;
  MaskPlane diffuseness_mask;
  MaskPlane variance_mask;
};
DoaAnalysis AnalyzeDoa(const Spectrogram& spectrogram,
                       const FrontEndParams& params);

// Debug dump: one "<name>.plane" file per plane in |directory|, each a short
// text header (magic, name, rows, cols, dtype, "end") followed by row-major
// little-endian data (float64 or uint8).
void DumpPlane(const std::string& directory, const std::string& name,
               const RealPlane& plane);
void DumpPlane(const std::string& directory, const std::string& name,
               const MaskPlane& plane);
void DumpAnalysis(const DoaAnalysis& analysis, const std::string& directory);
RealPlane ReadRealPlane(const std::string& path);
MaskPlane ReadMaskPlane(const std::string& path);

}  // namespace seld

#endif  // SELD_PARAMETRIC_ANALYSIS_H_
