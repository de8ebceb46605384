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

#ifndef SELD_WAV_IO_H_
#define SELD_WAV_IO_H_

#include <string>
#include <vector>

#include "seld/ambisonics.h"

namespace seld {

enum class SampleFormat { kPcm16, kPcm24, kFloat32 };

// Deinterleaved audio, samples in [-1, 1) for integer formats.
struct WavData {
  double sample_rate_hz = 0.0;
  std::vector<std::vector<double>> channels;

  size_t num_samples() const {
    return channels.empty() ? 0 : channels.front().size();
  }
};

// Reads PCM 16/24/32-bit and IEEE float 32/64-bit files, including
// WAVE_FORMAT_EXTENSIBLE. Throws InputError on anything else.
WavData ReadWav(const std::string& path);
void WriteWav(const std::string& path, const WavData& wav,
              SampleFormat format = SampleFormat::kFloat32);

// Four-channel ambisonic files in the given external layout.
AmbisonicBuffer ReadAmbisonicWav(const std::string& path, ChannelOrder order,
                                 Normalization normalization);
void WriteAmbisonicWav(const std::string& path, const AmbisonicBuffer& buffer,
                       ChannelOrder order, Normalization normalization,
                       SampleFormat format = SampleFormat::kFloat32);

}  // namespace seld

#endif  // SELD_WAV_IO_H_
