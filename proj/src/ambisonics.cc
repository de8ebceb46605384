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

#include "seld/ambisonics.h"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace seld {

namespace {

constexpr double kSqrt3 = std::numbers::sqrt3;

// External channel index for each internal channel W, X, Y, Z.
constexpr std::array<int, kNumAmbisonicChannels> kAcnIndex = {0, 3, 1, 2};
constexpr std::array<int, kNumAmbisonicChannels> kWxyzIndex = {0, 1, 2, 3};

const std::array<int, kNumAmbisonicChannels>& IndexFor(ChannelOrder order) {
  return order == ChannelOrder::kAcn ? kAcnIndex : kWxyzIndex;
}

}  // namespace

AmbisonicBuffer AmbisonicBuffer::Zeros(size_t num_samples,
                                       double sample_rate_hz,
                                       Normalization normalization) {
  AmbisonicBuffer buffer;
  for (auto& channel : buffer.channels) channel.assign(num_samples, 0.0);
  buffer.sample_rate_hz = sample_rate_hz;
  buffer.normalization = normalization;
  return buffer;
}

AmbisonicBuffer ToN3D(AmbisonicBuffer buffer) {
  if (buffer.normalization == Normalization::kN3D) return buffer;
  for (int c = kX; c <= kZ; ++c) {
    for (double& x : buffer.channels[c]) x *= kSqrt3;
  }
  buffer.normalization = Normalization::kN3D;
  return buffer;
}

AmbisonicBuffer FromExternalLayout(std::vector<std::vector<double>> channels,
                                   double sample_rate_hz, ChannelOrder order,
                                   Normalization normalization) {
  if (channels.size() != kNumAmbisonicChannels) {
    throw std::invalid_argument("first-order ambisonics needs 4 channels, got " +
                                std::to_string(channels.size()));
  }
  for (const auto& channel : channels) {
    if (channel.size() != channels.front().size()) {
      throw std::invalid_argument("ambisonic channels differ in length");
    }
  }
  AmbisonicBuffer buffer;
  const auto& index = IndexFor(order);
  for (int c = 0; c < kNumAmbisonicChannels; ++c) {
    buffer.channels[c] = std::move(channels[index[c]]);
  }
  buffer.sample_rate_hz = sample_rate_hz;
  buffer.normalization = normalization;
  return buffer;
}

std::vector<std::vector<double>> ToExternalLayout(const AmbisonicBuffer& buffer,
                                                  ChannelOrder order,
                                                  Normalization normalization) {
  double scale = 1.0;
  if (buffer.normalization == Normalization::kN3D &&
      normalization == Normalization::kSN3D) {
    scale = 1.0 / kSqrt3;
  } else if (buffer.normalization == Normalization::kSN3D &&
             normalization == Normalization::kN3D) {
    scale = kSqrt3;
  }
  std::vector<std::vector<double>> out(kNumAmbisonicChannels);
  const auto& index = IndexFor(order);
  for (int c = 0; c < kNumAmbisonicChannels; ++c) {
    std::vector<double> channel = buffer.channels[c];
    if (c != kW && scale != 1.0) {
      for (double& x : channel) x *= scale;
    }
    out[index[c]] = std::move(channel);
  }
  return out;
}

std::array<double, kNumAmbisonicChannels> ShEval(const Direction& direction) {
  const double ce = std::cos(direction.elevation);
  return {1.0, kSqrt3 * ce * std::cos(direction.azimuth),
          kSqrt3 * ce * std::sin(direction.azimuth),
          kSqrt3 * std::sin(direction.elevation)};
}

AmbisonicBuffer EncodePlaneWave(std::span<const double> mono,
                                const Direction& direction,
                                double sample_rate_hz) {
  const auto gains = ShEval(direction);
  AmbisonicBuffer buffer;
  buffer.sample_rate_hz = sample_rate_hz;
  buffer.normalization = Normalization::kN3D;
  for (int c = 0; c < kNumAmbisonicChannels; ++c) {
    buffer.channels[c].resize(mono.size());
    for (size_t t = 0; t < mono.size(); ++t) {
      buffer.channels[c][t] = gains[c] * mono[t];
    }
  }
  return buffer;
}

std::vector<double> Beamform(const AmbisonicBuffer& buffer,
                             const Direction& direction) {
  if (buffer.normalization != Normalization::kN3D) {
    return Beamform(ToN3D(buffer), direction);
  }
  const auto y = ShEval(direction);
  std::vector<double> out(buffer.num_samples());
  for (size_t t = 0; t < out.size(); ++t) {
    out[t] = y[kW] * buffer.channels[kW][t] + y[kX] * buffer.channels[kX][t] +
             y[kY] * buffer.channels[kY][t] + y[kZ] * buffer.channels[kZ][t];
  }
  return out;
}

}  // namespace seld
