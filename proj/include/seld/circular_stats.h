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

#ifndef SELD_CIRCULAR_STATS_H_
#define SELD_CIRCULAR_STATS_H_

#include <span>
#include <vector>

#include "seld/direction.h"

namespace seld {

// Azimuth statistics are 2pi-periodic, elevation statistics are the ordinary
// ones. All angles are in radians.

// Circular median: the sample minimizing the summed arc distance to all
// samples. Samples are ordered counter-clockwise starting after the largest
// empty gap on the circle; ties go to the earlier sample in that order, which
// keeps the result equivariant under rotation. Returns the wrapped sample.
// Requires a non-empty input.
double CircularMedian(std::span<const double> angles);

// sqrt(-2 ln R), R being the mean resultant length. Zero for a single sample,
// infinite when the resultant vanishes.
double CircularStd(std::span<const double> angles);

// Ordinary median; even sizes average the two middle values.
double LinearMedian(std::span<const double> values);

// Population standard deviation.
double LinearStd(std::span<const double> values);

// Circular median of the azimuths with ordinary median of the elevations.
Direction MedianDirection(std::span<const Direction> directions);

}  // namespace seld

#endif  // SELD_CIRCULAR_STATS_H_
