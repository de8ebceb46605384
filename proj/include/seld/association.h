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

#ifndef SELD_ASSOCIATION_H_
#define SELD_ASSOCIATION_H_

#include <optional>
#include <span>
#include <vector>

#include "seld/config.h"
#include "seld/direction.h"
#include "seld/parametric_analysis.h"

namespace seld {

// Statistics of the filtered DOAs pooled into one output frame.
struct FrameEstimate {
  int frame = 0;
  std::vector<Direction> pooled;  // valid bins of all windows of the frame
  std::vector<Direction> doas;    // cluster centroids, one per overlap count
  int raw_count = 0;
  double sigma_az = 0.0;  // circular std, radians
  double sigma_el = 0.0;  // radians
  int overlap = 0;        // o(m); 0 for inactive frames

  bool active() const { return overlap > 0; }
};

struct TrackPoint {
  int frame = 0;
  Direction doa;
};

// One detected event: a per-frame DOA track and its activity span.
struct EventAnnotation {
  std::vector<TrackPoint> doa_track;  // sorted by frame
  int onset = 0;                      // first frame
  int offset = 0;                     // last frame, inclusive
  Direction median_doa;
  std::optional<int> class_id;

  int length() const { return offset - onset + 1; }
  // Recomputes onset, offset and median_doa from the track.
  void Refresh();
};

// Pools the valid bins of every window into its frame. Frames whose pool
// reaches K_min bins get their spread statistics and o(m); the others stay
// inactive. Returns |num_frames| estimates, or enough to cover every window
// when num_frames < 0.
std::vector<FrameEstimate> ResampleToFrames(const DoaMap& map,
                                            const FrontEndParams& params,
                                            int num_frames = -1);

// o(m): 1 when sigma_az / 2 + sigma_el < sigma_max (degrees), else 2.
int EstimateOverlap(const FrameEstimate& frame, const FrontEndParams& params);

// Central-angle K-means for k in {1, 2}. k = 1 is the median direction.
// k = 2 seeds with the farthest pair of bins, assigns by central angle and
// updates centroids as member median directions until the assignment is
// stable (at most 50 rounds). Degrades to k = 1 when fewer than two
// distinct bins exist or a cluster empties.
std::vector<Direction> ClusterFrame(std::span<const Direction> bins, int k);

// Runs EstimateOverlap and ClusterFrame on every active frame.
void ClusterFrames(std::span<FrameEstimate> frames,
                   const FrontEndParams& params);

// Greedy frame-by-frame grouping of clustered DOAs into events. A (DOA,
// event) pair is eligible when the central angle to the event's median
// direction is below the grouping angle and the frame gap to the event's
// last frame is below the grouping distance. Pairs are taken in order of
// increasing angle, ties to the earlier onset. Each event takes at most one DOA per frame; unmatched
// DOAs open new events. Events whose gap is exceeded are closed for good.
std::vector<EventAnnotation> GroupIntoEvents(
    std::span<const FrameEstimate> frames, const FrontEndParams& params);

// (a) Onset delay: while an event's onset frame has o(m) >= 2 and the event
// did not cause that overlap (no other event already spans the frame), the
// leading track point is dropped. (b) Events shorter than event_min_length
// frames are removed. Output is sorted by onset.
std::vector<EventAnnotation> PostprocessEvents(
    std::vector<EventAnnotation> events, std::span<const FrameEstimate> frames,
    const FrontEndParams& params);

// ResampleToFrames -> ClusterFrames -> GroupIntoEvents -> PostprocessEvents.
struct AssociationResult {
  std::vector<FrameEstimate> frames;
  std::vector<EventAnnotation> events;
};
AssociationResult Associate(const DoaMap& map, const FrontEndParams& params,
                            int num_frames = -1);

// Event-level and frame-level metadata rows.
struct EventRow {
  int class_id = -1;
  double onset_s = 0.0;
  double offset_s = 0.0;
  int azimuth_deg = 0;    // (-180, 180]
  int elevation_deg = 0;  // [-90, 90]
  bool operator==(const EventRow&) const = default;
};

struct FrameRow {
  int frame = 0;
  int class_id = -1;
  int azimuth_deg = 0;
  int elevation_deg = 0;
  bool operator==(const FrameRow&) const = default;
};

struct Metadata {
  std::vector<EventRow> events;
  std::vector<FrameRow> frames;
};

// Direction at every frame of [onset, offset]: the track point of that frame
// or, inside track gaps, the latest earlier one.
std::vector<TrackPoint> ExpandTrack(const EventAnnotation& event);

// Integer degrees with azimuth in (-180, 180] and elevation in [-90, 90].
int RoundAzimuthDeg(double azimuth);
int RoundElevationDeg(double elevation);

// One event row per event ordered by onset (times = frame * frame_hop_s)
// and one frame row per active (frame, event), ordered by frame then onset.
// Unclassified events carry class -1.
Metadata EmitMetadata(std::span<const EventAnnotation> events,
                      const FrontEndParams& params);

}  // namespace seld

#endif  // SELD_ASSOCIATION_H_
