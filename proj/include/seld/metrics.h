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

#ifndef SELD_METRICS_H_
#define SELD_METRICS_H_

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "seld/association.h"
#include "seld/direction.h"

namespace seld {

struct LabeledDoa {
  int class_id = -1;
  Direction doa;
};

// Active (class, DOA) tuples per frame.
struct FrameLabels {
  std::vector<std::vector<LabeledDoa>> frames;

  int num_frames() const { return static_cast<int>(frames.size()); }
  // Grows (with empty frames) to at least |num_frames| frames.
  void Resize(int num_frames);
};

FrameLabels LabelsFromRows(std::span<const FrameRow> rows, int num_frames = 0);
FrameLabels LabelsFromEvents(std::span<const EventAnnotation> events,
                             int num_frames = 0);

struct SedScores {
  double er = 0.0;
  double f = 0.0;
};

struct DoaScores {
  double doa_deg = 0.0;
  double fr = 0.0;
};

struct MetricsReport {
  double er = 0.0;
  double f = 0.0;
  double doa_deg = 0.0;
  double fr = 0.0;
  double seld = 0.0;
};

inline constexpr int kFramesPerSegment = 50;  // one second of 0.02 s frames

// Segment-based detection metrics over one-second segments. A class counts
// as active in a segment if it is active in any of its frames. Per segment
// S = min(FN, FP), D = max(0, FN - FP), I = max(0, FP - FN).
// ER = (S + D + I) / N, N = reference actives; with N = 0 the error count
// itself is returned. F = 2 TP / (2 TP + FP + FN), 1 when nothing is active
// in either stream. The shorter stream is padded with empty frames.
SedScores SedMetrics(const FrameLabels& estimate, const FrameLabels& reference);

// Minimum-total-cost assignment between the rows and columns of a cost
// matrix (Hungarian method). Returns matched (row, column) pairs; their count
// is min(rows, columns).
std::vector<std::pair<int, int>> MinCostAssignment(
    const std::vector<std::vector<double>>& cost);

// Frame-wise localization metrics. Estimated and reference DOAs of a frame
// are matched class-agnostically by minimum total central angle; doa_deg
// averages the matched angles over all matched pairs (0 if there are none).
// fr is the fraction of frames whose DOA counts agree, empty frames included.
DoaScores DoaMetrics(const FrameLabels& estimate, const FrameLabels& reference);

// (ER + (1 - F) + DOA / 180 + (1 - FR)) / 4.
double SeldScore(double er, double f, double doa_deg, double fr);

MetricsReport Evaluate(const FrameLabels& estimate,
                       const FrameLabels& reference);

// Human-readable report and a single-line CSV (with header line).
std::string FormatReport(const MetricsReport& report);
std::string FormatReportCsv(const MetricsReport& report);

}  // namespace seld

#endif  // SELD_METRICS_H_
