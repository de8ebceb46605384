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

#include "seld/association.h"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "seld/circular_stats.h"
#include "seld/stft.h"

namespace seld {

void EventAnnotation::Refresh() {
  if (doa_track.empty()) return;
  onset = doa_track.front().frame;
  offset = doa_track.back().frame;
  std::vector<Direction> doas;
  doas.reserve(doa_track.size());
  for (const TrackPoint& p : doa_track) doas.push_back(p.doa);
  median_doa = MedianDirection(doas);
}

std::vector<FrameEstimate> ResampleToFrames(const DoaMap& map,
                                            const FrontEndParams& params,
                                            int num_frames) {
  if (num_frames < 0) {
    num_frames = map.num_windows() == 0
                     ? 0
                     : WindowToFrame(map.num_windows() - 1, params) + 1;
  }
  std::vector<FrameEstimate> frames(num_frames);
  for (int m = 0; m < num_frames; ++m) frames[m].frame = m;
  for (int n = 0; n < map.num_windows(); ++n) {
    const int m = WindowToFrame(n, params);
    if (m < 0 || m >= num_frames) continue;
    for (int k = 0; k < map.num_bins(); ++k) {
      if (!map.valid(k, n)) continue;
      frames[m].pooled.push_back(Direction{map.azimuth(k, n), map.elevation(k, n)});
    }
  }
  const int min_bins = std::max(1, params.resample_min_bins_k_min);
  std::vector<double> az, el;
  for (FrameEstimate& f : frames) {
    f.raw_count = static_cast<int>(f.pooled.size());
    if (f.raw_count < min_bins) {
      f.pooled.clear();
      continue;
    }
    az.clear();
    el.clear();
    for (const Direction& d : f.pooled) {
      az.push_back(d.azimuth);
      el.push_back(d.elevation);
    }
    f.sigma_az = CircularStd(az);
    f.sigma_el = LinearStd(el);
    f.overlap = EstimateOverlap(f, params);
  }
  return frames;
}

int EstimateOverlap(const FrameEstimate& frame, const FrontEndParams& params) {
  const double spread_deg =
      (0.5 * frame.sigma_az + frame.sigma_el) * kDegreesFromRadians;
  return spread_deg < params.overlap_std_threshold_sigma_max ? 1 : 2;
}

std::vector<Direction> ClusterFrame(std::span<const Direction> bins, int k) {
  if (bins.empty()) return {};
  if (k < 2 || bins.size() < 2) return {MedianDirection(bins)};

  // Farthest-pair seeding.
  size_t seed_a = 0, seed_b = 0;
  double widest = 0.0;
  for (size_t i = 0; i < bins.size(); ++i) {
    for (size_t j = i + 1; j < bins.size(); ++j) {
      const double angle = CentralAngle(bins[i], bins[j]);
      if (angle > widest) {
        widest = angle;
        seed_a = i;
        seed_b = j;
      }
    }
  }
  if (widest == 0.0) return {MedianDirection(bins)};

  std::array<Direction, 2> centroids = {bins[seed_a], bins[seed_b]};
  std::vector<int> assignment(bins.size(), -1);
  std::vector<int> next(bins.size());
  std::array<std::vector<Direction>, 2> members;
  constexpr int kMaxRounds = 50;
  for (int round = 0; round < kMaxRounds; ++round) {
    for (size_t i = 0; i < bins.size(); ++i) {
      next[i] = CentralAngle(bins[i], centroids[1]) <
                        CentralAngle(bins[i], centroids[0])
                    ? 1
                    : 0;
    }
    if (next == assignment) break;
    assignment = next;
    members[0].clear();
    members[1].clear();
    for (size_t i = 0; i < bins.size(); ++i) {
      members[assignment[i]].push_back(bins[i]);
    }
    if (members[0].empty() || members[1].empty()) {
      return {MedianDirection(bins)};
    }
    centroids = {MedianDirection(members[0]), MedianDirection(members[1])};
  }
  return {centroids[0], centroids[1]};
}

void ClusterFrames(std::span<FrameEstimate> frames,
                   const FrontEndParams& params) {
  for (FrameEstimate& f : frames) {
    if (!f.active()) continue;
    f.overlap = EstimateOverlap(f, params);
    f.doas = ClusterFrame(f.pooled, f.overlap);
  }
}

std::vector<EventAnnotation> GroupIntoEvents(
    std::span<const FrameEstimate> frames, const FrontEndParams& params) {
  const double max_angle = params.group_max_angle_deg * kRadiansFromDegrees;
  std::vector<EventAnnotation> events;

  struct Candidate {
    double angle;
    int onset;
    size_t event;
    size_t doa;
  };
  std::vector<Candidate> candidates;
  for (const FrameEstimate& f : frames) {
    if (f.doas.empty()) continue;
    const int m = f.frame;
    candidates.clear();
    for (size_t e = 0; e < events.size(); ++e) {
      const EventAnnotation& event = events[e];
      const int gap = m - event.offset;
      if (gap <= 0 || gap >= params.group_max_frame_dist) continue;
      for (size_t d = 0; d < f.doas.size(); ++d) {
        const double angle = CentralAngle(f.doas[d], event.median_doa);
        if (angle < max_angle) candidates.push_back({angle, event.onset, e, d});
      }
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const Candidate& a, const Candidate& b) {
                return std::tie(a.angle, a.onset, a.event, a.doa) <
                       std::tie(b.angle, b.onset, b.event, b.doa);
              });
    std::vector<bool> doa_used(f.doas.size(), false);
    std::vector<size_t> touched;
    for (const Candidate& c : candidates) {
      if (doa_used[c.doa] ||
          std::find(touched.begin(), touched.end(), c.event) != touched.end()) {
        continue;
      }
      doa_used[c.doa] = true;
      touched.push_back(c.event);
      events[c.event].doa_track.push_back({m, f.doas[c.doa]});
    }
    for (size_t e : touched) events[e].Refresh();
    for (size_t d = 0; d < f.doas.size(); ++d) {
      if (doa_used[d]) continue;
      EventAnnotation event;
      event.doa_track.push_back({m, f.doas[d]});
      event.Refresh();
      events.push_back(std::move(event));
    }
  }
  return events;
}

std::vector<EventAnnotation> PostprocessEvents(
    std::vector<EventAnnotation> events, std::span<const FrameEstimate> frames,
    const FrontEndParams& params) {
  const auto long_enough = [&](const EventAnnotation& e) {
    return !e.doa_track.empty() && e.length() >= params.event_min_length;
  };
  std::stable_sort(events.begin(), events.end(),
                   [](const EventAnnotation& a, const EventAnnotation& b) {
                     return a.onset < b.onset;
                   });
  const auto overlap_at = [&](int m) {
    return (m >= 0 && m < static_cast<int>(frames.size())) ? frames[m].overlap
                                                            : 0;
  };
  // Only events that will survive the length rule can explain an overlap.
  for (size_t i = 0; i < events.size(); ++i) {
    EventAnnotation& event = events[i];
    while (!event.doa_track.empty()) {
      const int m = event.doa_track.front().frame;
      if (overlap_at(m) < 2) break;
      bool explained = false;
      for (size_t j = 0; j < events.size() && !explained; ++j) {
        if (j == i || !long_enough(events[j])) continue;
        explained = events[j].onset <= m && m <= events[j].offset;
      }
      if (explained) break;
      event.doa_track.erase(event.doa_track.begin());
      event.Refresh();
    }
  }
  std::erase_if(events, [&](const EventAnnotation& e) { return !long_enough(e); });
  std::stable_sort(events.begin(), events.end(),
                   [](const EventAnnotation& a, const EventAnnotation& b) {
                     return a.onset < b.onset;
                   });
  return events;
}

AssociationResult Associate(const DoaMap& map, const FrontEndParams& params,
                            int num_frames) {
  AssociationResult result;
  result.frames = ResampleToFrames(map, params, num_frames);
  ClusterFrames(result.frames, params);
  result.events = PostprocessEvents(GroupIntoEvents(result.frames, params),
                                    result.frames, params);
  return result;
}

std::vector<TrackPoint> ExpandTrack(const EventAnnotation& event) {
  std::vector<TrackPoint> expanded;
  if (event.doa_track.empty()) return expanded;
  size_t next = 0;
  Direction current = event.doa_track.front().doa;
  for (int m = event.onset; m <= event.offset; ++m) {
    while (next < event.doa_track.size() && event.doa_track[next].frame <= m) {
      current = event.doa_track[next].doa;
      ++next;
    }
    expanded.push_back({m, current});
  }
  return expanded;
}

int RoundAzimuthDeg(double azimuth) {
  long deg = std::lround(WrapAngle(azimuth) * kDegreesFromRadians);
  if (deg <= -180) deg += 360;
  return static_cast<int>(deg);
}

int RoundElevationDeg(double elevation) {
  const long deg = std::lround(elevation * kDegreesFromRadians);
  return static_cast<int>(std::clamp(deg, -90L, 90L));
}

Metadata EmitMetadata(std::span<const EventAnnotation> events,
                      const FrontEndParams& params) {
  std::vector<const EventAnnotation*> ordered;
  for (const EventAnnotation& e : events) ordered.push_back(&e);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const EventAnnotation* a, const EventAnnotation* b) {
                     return a->onset < b->onset;
                   });
  Metadata metadata;
  for (const EventAnnotation* e : ordered) {
    EventRow row;
    row.class_id = e->class_id.value_or(-1);
    row.onset_s = e->onset * params.frame_hop_s;
    row.offset_s = e->offset * params.frame_hop_s;
    row.azimuth_deg = RoundAzimuthDeg(e->median_doa.azimuth);
    row.elevation_deg = RoundElevationDeg(e->median_doa.elevation);
    metadata.events.push_back(row);
    for (const TrackPoint& p : ExpandTrack(*e)) {
      metadata.frames.push_back({p.frame, row.class_id,
                                 RoundAzimuthDeg(p.doa.azimuth),
                                 RoundElevationDeg(p.doa.elevation)});
    }
  }
  std::stable_sort(metadata.frames.begin(), metadata.frames.end(),
                   [](const FrameRow& a, const FrameRow& b) {
                     return a.frame < b.frame;
                   });
  return metadata;
}

}  // namespace seld
