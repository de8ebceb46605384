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

#include "seld/circular_stats.h"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <tuple>

namespace seld {

double WrapAngle(double radians) {
  if (radians > -kPi && radians <= kPi) return radians;
  double r = std::fmod(radians + kPi, kTwoPi);
  if (r <= 0.0) r += kTwoPi;
  return r - kPi;
}

Direction Direction::Make(double azimuth, double elevation) {
  return Direction{WrapAngle(azimuth), std::clamp(elevation, -kHalfPi, kHalfPi)};
}

Direction Direction::FromDegrees(double azimuth_deg, double elevation_deg) {
  return Make(azimuth_deg * kRadiansFromDegrees,
              elevation_deg * kRadiansFromDegrees);
}

double CentralAngle(const Direction& first, const Direction& second) {
  // Vincenty form of the great-circle angle; equal to the arccos expression
  // but well conditioned for small and antipodal separations. Arguments are
  // put in a fixed order so the result is exactly symmetric.
  const bool swap = std::tie(second.azimuth, second.elevation) <
                    std::tie(first.azimuth, first.elevation);
  const Direction& a = swap ? second : first;
  const Direction& b = swap ? first : second;
  const double dphi = a.azimuth - b.azimuth;
  const double sa = std::sin(a.elevation), ca = std::cos(a.elevation);
  const double sb = std::sin(b.elevation), cb = std::cos(b.elevation);
  const double cd = std::cos(dphi), sd = std::sin(dphi);
  const double y1 = cb * sd;
  const double y2 = ca * sb - sa * cb * cd;
  const double x = sa * sb + ca * cb * cd;
  return std::atan2(std::hypot(y1, y2), x);
}

namespace {

// Sorted angles unwrapped into a strictly non-decreasing sequence that starts
// right after the largest empty gap of the circle. Also reports that gap.
struct UnwrappedAngles {
  std::vector<double> values;
  std::vector<double> wrapped;  // the same samples before unwrapping
  double largest_gap = 0.0;
};

UnwrappedAngles Unwrap(std::span<const double> angles) {
  std::vector<double> sorted(angles.size());
  std::transform(angles.begin(), angles.end(), sorted.begin(), WrapAngle);
  std::sort(sorted.begin(), sorted.end());
  const size_t n = sorted.size();
  size_t start = 0;
  double largest = sorted.front() + kTwoPi - sorted.back();
  for (size_t i = 0; i + 1 < n; ++i) {
    const double gap = sorted[i + 1] - sorted[i];
    if (gap > largest) {
      largest = gap;
      start = i + 1;
    }
  }
  UnwrappedAngles out;
  out.largest_gap = largest;
  out.values.resize(n);
  out.wrapped.resize(n);
  for (size_t j = 0; j < n; ++j) {
    const size_t idx = (start + j) % n;
    out.values[j] = sorted[idx] + (idx < start ? kTwoPi : 0.0);
    out.wrapped[j] = sorted[idx];
  }
  return out;
}

// When one empty arc exceeds pi, returns the sample at the lower middle of
// the unwrapped order without sorting (pigeonhole maximum gap, then
// selection). Returns nullopt otherwise.
std::optional<double> HalfCircleMedian(std::span<const double> angles) {
  const size_t n = angles.size();
  std::vector<double> w(n);
  std::transform(angles.begin(), angles.end(), w.begin(), WrapAngle);
  const auto [lo_it, hi_it] = std::minmax_element(w.begin(), w.end());
  const double lo = *lo_it, hi = *hi_it;
  double start_value = lo;  // first sample after the largest gap
  double largest = lo + kTwoPi - hi;
  // Only one gap can exceed pi, so the wrap-around gap settles it.
  if (n > 1 && hi > lo && !(largest > kPi)) {
    // n buckets narrower than the mean gap: the largest gap spans buckets.
    const double width = (hi - lo) / static_cast<double>(n);
    std::vector<double> bmin(n, std::numeric_limits<double>::infinity());
    std::vector<double> bmax(n, -std::numeric_limits<double>::infinity());
    for (double x : w) {
      const size_t b = std::min(n - 1, static_cast<size_t>((x - lo) / width));
      bmin[b] = std::min(bmin[b], x);
      bmax[b] = std::max(bmax[b], x);
    }
    double previous = bmax[0];
    for (size_t b = 1; b < n; ++b) {
      if (bmin[b] > bmax[b]) continue;
      if (bmin[b] - previous > largest) {
        largest = bmin[b] - previous;
        start_value = bmin[b];
      }
      previous = bmax[b];
    }
  }
  if (!(largest > kPi)) return std::nullopt;
  std::vector<double> keys = w;
  if (start_value > lo) {
    for (double& x : keys) {
      if (x < start_value) x += kTwoPi;
    }
  }
  const size_t mid = (n - 1) / 2;
  std::nth_element(keys.begin(), keys.begin() + mid, keys.end());
  if (!(keys[mid] > kPi)) return keys[mid];
  // Return the sample itself rather than a re-wrapped copy.
  for (double x : w) {
    if (x < start_value && x + kTwoPi == keys[mid]) return x;
  }
  return WrapAngle(keys[mid]);
}

}  // namespace

double CircularMedian(std::span<const double> angles) {
  assert(!angles.empty());
  if (const auto fast = HalfCircleMedian(angles)) return *fast;
  const UnwrappedAngles unwrapped = Unwrap(angles);
  const std::vector<double>& u = unwrapped.values;
  const size_t n = u.size();

  // Everything inside an arc shorter than pi: arc distances are linear
  // distances and the lower middle sample is the minimizer.
  if (unwrapped.largest_gap > kPi) return unwrapped.wrapped[(n - 1) / 2];

  // General case, O(n) after sorting. For candidate i the samples within
  // [u_i, u_i + pi] ahead contribute (v_j - u_i), the rest (2pi - v_j + u_i).
  std::vector<double> v(2 * n);
  for (size_t j = 0; j < n; ++j) {
    v[j] = u[j];
    v[j + n] = u[j] + kTwoPi;
  }
  std::vector<double> prefix(2 * n + 1, 0.0);
  for (size_t j = 0; j < 2 * n; ++j) prefix[j + 1] = prefix[j] + v[j];

  std::vector<double> cost(n);
  size_t last = 0;
  for (size_t i = 0; i < n; ++i) {
    if (last < i) last = i;
    while (last + 1 < i + n && v[last + 1] - u[i] <= kPi) ++last;
    const double ahead_count = static_cast<double>(last - i + 1);
    const double behind_count = static_cast<double>(i + n - 1 - last);
    const double ahead = (prefix[last + 1] - prefix[i]) - ahead_count * u[i];
    const double behind = behind_count * (kTwoPi + u[i]) -
                          (prefix[i + n] - prefix[last + 1]);
    cost[i] = ahead + behind;
  }
  const double best = *std::min_element(cost.begin(), cost.end());
  const double tolerance = 1e-12 * static_cast<double>(n);
  for (size_t i = 0; i < n; ++i) {
    if (cost[i] <= best + tolerance) return unwrapped.wrapped[i];
  }
  return unwrapped.wrapped.front();
}

double CircularStd(std::span<const double> angles) {
  assert(!angles.empty());
  double c = 0.0, s = 0.0;
  for (double a : angles) {
    c += std::cos(a);
    s += std::sin(a);
  }
  const double n = static_cast<double>(angles.size());
  const double resultant = std::min(1.0, std::hypot(c, s) / n);
  if (resultant <= 0.0) return std::numeric_limits<double>::infinity();
  return std::sqrt(-2.0 * std::log(resultant));
}

double LinearMedian(std::span<const double> values) {
  assert(!values.empty());
  std::vector<double> v(values.begin(), values.end());
  const size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  const double upper = v[mid];
  if (v.size() % 2 == 1) return upper;
  const double lower = *std::max_element(v.begin(), v.begin() + mid);
  return 0.5 * (lower + upper);
}

double LinearStd(std::span<const double> values) {
  assert(!values.empty());
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double acc = 0.0;
  for (double x : values) acc += (x - mean) * (x - mean);
  return std::sqrt(acc / n);
}

Direction MedianDirection(std::span<const Direction> directions) {
  std::vector<double> az(directions.size()), el(directions.size());
  for (size_t i = 0; i < directions.size(); ++i) {
    az[i] = directions[i].azimuth;
    el[i] = directions[i].elevation;
  }
  return Direction{CircularMedian(az), LinearMedian(el)};
}

}  // namespace seld
