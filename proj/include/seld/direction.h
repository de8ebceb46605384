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

#ifndef SELD_DIRECTION_H_
#define SELD_DIRECTION_H_

#include <numbers>

namespace seld {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kHalfPi = 0.5 * std::numbers::pi;
inline constexpr double kDegreesFromRadians = 180.0 / std::numbers::pi;
inline constexpr double kRadiansFromDegrees = std::numbers::pi / 180.0;

// Wraps an angle in radians into (-pi, pi].
double WrapAngle(double radians);

// Direction of arrival. Azimuth is counter-clockwise from the front (x axis)
// towards the left (y axis), elevation is positive upwards. Both in radians.
struct Direction {
  double azimuth = 0.0;
  double elevation = 0.0;

  // Wraps azimuth into (-pi, pi] and clamps elevation into [-pi/2, pi/2].
  static Direction Make(double azimuth, double elevation);
  static Direction FromDegrees(double azimuth_deg, double elevation_deg);

  double azimuth_deg() const { return azimuth * kDegreesFromRadians; }
  double elevation_deg() const { return elevation * kDegreesFromRadians; }

  bool operator==(const Direction&) const = default;
};

// Great-circle angle between two directions, in radians within [0, pi].
double CentralAngle(const Direction& a, const Direction& b);

}  // namespace seld

#endif  // SELD_DIRECTION_H_
