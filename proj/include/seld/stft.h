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

#ifndef SELD_STFT_H_
#define SELD_STFT_H_

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "seld/ambisonics.h"
#include "seld/config.h"

namespace seld {

// One-sided STFT of a multichannel signal: periodic Hann window, no padding,
// windows fully inside the signal. Values are the raw (unscaled) DFT.
class Spectrogram {
 public:
  Spectrogram() = default;
  Spectrogram(int num_channels, int num_bins, int num_windows,
              int window_size, int hop, double sample_rate_hz);

  int num_channels() const { return num_channels_; }
  int num_bins() const { return num_bins_; }
  int num_windows() const { return num_windows_; }
  int window_size() const { return window_size_; }
  int hop() const { return hop_; }
  double sample_rate_hz() const { return sample_rate_hz_; }

  std::complex<double>& at(int channel, int k, int n) {
    return data_[Index(channel, k, n)];
  }
  const std::complex<double>& at(int channel, int k, int n) const {
    return data_[Index(channel, k, n)];
  }

  // Centre frequency of bin k and centre time of window n.
  double bin_freq_hz(int k) const { return k * sample_rate_hz_ / window_size_; }
  double window_time_s(int n) const {
    return (static_cast<double>(n) * hop_ + 0.5 * window_size_) /
           sample_rate_hz_;
  }
  std::vector<double> bin_freqs_hz() const;
  std::vector<double> window_times_s() const;

 private:
  size_t Index(int channel, int k, int n) const {
    return (static_cast<size_t>(channel) * num_bins_ + k) * num_windows_ + n;
  }

  int num_channels_ = 0;
  int num_bins_ = 0;
  int num_windows_ = 0;
  int window_size_ = 0;
  int hop_ = 0;
  double sample_rate_hz_ = 0.0;
  std::vector<std::complex<double>> data_;
};

// Periodic Hann window of |size| samples.
std::vector<double> HannWindow(int size);

// Generic multichannel STFT. Throws std::invalid_argument when the signal is
// shorter than one window or the channels differ in length.
Spectrogram Stft(std::span<const std::vector<double>> channels,
                 double sample_rate_hz, int window_size, int hop);

// Ambisonic STFT with the configured window and hop. The buffer is
// converted to N3D first.
Spectrogram Stft(const AmbisonicBuffer& signal, const FrontEndParams& params);

// Number of windows Stft produces for |num_samples| samples (0 if too short).
int NumWindows(size_t num_samples, int window_size, int hop);

// 0.02 s output frame containing the centre of STFT window n.
int WindowToFrame(int n, const FrontEndParams& params);

// Contiguous band of bins [first_bin, first_bin + num_bins) of a spectrogram.
struct BandView {
  const Spectrogram* spectrogram = nullptr;
  int first_bin = 0;
  int num_bins = 0;

  int num_windows() const { return spectrogram->num_windows(); }
  const std::complex<double>& at(int channel, int k, int n) const {
    return spectrogram->at(channel, first_bin + k, n);
  }
  double bin_freq_hz(int k) const {
    return spectrogram->bin_freq_hz(first_bin + k);
  }
};

// Restricts to bins whose centre frequency lies in [low, high] (inclusive).
// Throws std::invalid_argument for an inverted range.
BandView BandLimit(const Spectrogram& spectrogram,
                   const std::array<double, 2>& range_hz);

}  // namespace seld

#endif  // SELD_STFT_H_
