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

#include "seld/stft.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "real_fft.h"

namespace seld {

Spectrogram::Spectrogram(int num_channels, int num_bins, int num_windows,
                         int window_size, int hop, double sample_rate_hz)
    : num_channels_(num_channels),
      num_bins_(num_bins),
      num_windows_(num_windows),
      window_size_(window_size),
      hop_(hop),
      sample_rate_hz_(sample_rate_hz),
      data_(static_cast<size_t>(num_channels) * num_bins * num_windows) {}

std::vector<double> Spectrogram::bin_freqs_hz() const {
  std::vector<double> f(num_bins_);
  for (int k = 0; k < num_bins_; ++k) f[k] = bin_freq_hz(k);
  return f;
}

std::vector<double> Spectrogram::window_times_s() const {
  std::vector<double> t(num_windows_);
  for (int n = 0; n < num_windows_; ++n) t[n] = window_time_s(n);
  return t;
}

std::vector<double> HannWindow(int size) {
  std::vector<double> w(size);
  for (int i = 0; i < size; ++i) {
    w[i] = 0.5 - 0.5 * std::cos(kTwoPi * i / size);
  }
  return w;
}

int NumWindows(size_t num_samples, int window_size, int hop) {
  if (num_samples < static_cast<size_t>(window_size)) return 0;
  return static_cast<int>((num_samples - window_size) / hop) + 1;
}

Spectrogram Stft(std::span<const std::vector<double>> channels,
                 double sample_rate_hz, int window_size, int hop) {
  if (channels.empty()) throw std::invalid_argument("no channels to analyze");
  const size_t length = channels.front().size();
  for (const auto& c : channels) {
    if (c.size() != length) {
      throw std::invalid_argument("channels differ in length");
    }
  }
  const int num_windows = NumWindows(length, window_size, hop);
  if (num_windows == 0) {
    throw std::invalid_argument("signal of " + std::to_string(length) +
                                " samples is shorter than the " +
                                std::to_string(window_size) +
                                "-sample STFT window");
  }
  const int num_bins = window_size / 2 + 1;
  Spectrogram spec(static_cast<int>(channels.size()), num_bins, num_windows,
                   window_size, hop, sample_rate_hz);
  const std::vector<double> window = HannWindow(window_size);
  const internal::RealFft fft(window_size);
  std::vector<double> frame(window_size);
  std::vector<std::complex<double>> bins(num_bins);
  for (size_t c = 0; c < channels.size(); ++c) {
    for (int n = 0; n < num_windows; ++n) {
      const double* x = channels[c].data() + static_cast<size_t>(n) * hop;
      for (int i = 0; i < window_size; ++i) frame[i] = window[i] * x[i];
      fft.Forward(frame, bins);
      for (int k = 0; k < num_bins; ++k) {
        spec.at(static_cast<int>(c), k, n) = bins[k];
      }
    }
  }
  return spec;
}

Spectrogram Stft(const AmbisonicBuffer& signal, const FrontEndParams& params) {
  const AmbisonicBuffer n3d = ToN3D(signal);
  return Stft(std::span<const std::vector<double>>(n3d.channels),
              n3d.sample_rate_hz, params.stft_window_size, params.stft_hop);
}

int WindowToFrame(int n, const FrontEndParams& params) {
  const double center_samples =
      static_cast<double>(n) * params.stft_hop + 0.5 * params.stft_window_size;
  const double frame_samples = params.frame_hop_s * params.sample_rate_hz;
  return static_cast<int>(std::floor(center_samples / frame_samples));
}

BandView BandLimit(const Spectrogram& spectrogram,
                   const std::array<double, 2>& range_hz) {
  if (range_hz[0] > range_hz[1]) {
    throw std::invalid_argument("inverted frequency range");
  }
  int first = spectrogram.num_bins();
  int last = -1;
  for (int k = 0; k < spectrogram.num_bins(); ++k) {
    const double f = spectrogram.bin_freq_hz(k);
    if (f >= range_hz[0] && f <= range_hz[1]) {
      first = std::min(first, k);
      last = k;
    }
  }
  BandView view;
  view.spectrogram = &spectrogram;
  view.first_bin = last < 0 ? 0 : first;
  view.num_bins = last < 0 ? 0 : last - first + 1;
  return view;
}

}  // namespace seld
