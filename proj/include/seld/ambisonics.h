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

#ifndef SELD_AMBISONICS_H_
#define SELD_AMBISONICS_H_

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "seld/direction.h"

namespace seld {

// First-order ambisonics only. Internally channels are always stored in
// W, X, Y, Z order; the normalization tag tells how X, Y, Z are scaled
// relative to W (N3D = sqrt(3) times SN3D at order one).
enum class Normalization { kN3D, kSN3D };

// Channel order of external (file) signals. kAcn is W, Y, Z, X.
enum class ChannelOrder { kAcn, kWxyz };

inline constexpr int kNumAmbisonicChannels = 4;
enum AmbisonicChannel { kW = 0, kX = 1, kY = 2, kZ = 3 };

struct AmbisonicBuffer {
  std::array<std::vector<double>, kNumAmbisonicChannels> channels;
  double sample_rate_hz = 48000.0;
  Normalization normalization = Normalization::kN3D;

  // All four channels zero-initialized.
  static AmbisonicBuffer Zeros(size_t num_samples, double sample_rate_hz,
                               Normalization normalization = Normalization::kN3D);

  size_t num_samples() const { return channels[kW].size(); }
};

// Rescales SN3D input to N3D. N3D input is returned untouched.
AmbisonicBuffer ToN3D(AmbisonicBuffer buffer);

// Reorders/rescales between the internal layout (W, X, Y, Z) and an external
// one. |channels| must hold exactly four equal-length signals.
AmbisonicBuffer FromExternalLayout(std::vector<std::vector<double>> channels,
                                   double sample_rate_hz, ChannelOrder order,
                                   Normalization normalization);
std::vector<std::vector<double>> ToExternalLayout(const AmbisonicBuffer& buffer,
                                                  ChannelOrder order,
                                                  Normalization normalization);

// N3D real spherical harmonics up to order one, in W, X, Y, Z order:
// [1, sqrt(3) cos(el) cos(az), sqrt(3) cos(el) sin(az), sqrt(3) sin(el)].
std::array<double, kNumAmbisonicChannels> ShEval(const Direction& direction);

// Plane wave from |direction| carrying |mono|, N3D.
AmbisonicBuffer EncodePlaneWave(std::span<const double> mono,
                                const Direction& direction,
                                double sample_rate_hz);

// Virtual first-order hypercardioid steered to |direction|: the dot product
// of ShEval(direction) with the N3D signal vector at every sample. A unit
// plane wave at central angle g from the look direction yields 1 + 3 cos(g).
// SN3D input is converted first.
std::vector<double> Beamform(const AmbisonicBuffer& buffer,
                             const Direction& direction);

}  // namespace seld

#endif  // SELD_AMBISONICS_H_
