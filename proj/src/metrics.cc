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

#include "seld/metrics.h"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <set>

namespace seld {

void FrameLabels::Resize(int num_frames) {
  if (num_frames > this->num_frames()) frames.resize(num_frames);
}

FrameLabels LabelsFromRows(std::span<const FrameRow> rows, int num_frames) {
  FrameLabels labels;
  labels.Resize(num_frames);
  for (const FrameRow& row : rows) {
    labels.Resize(row.frame + 1);
    labels.frames[row.frame].push_back(
        {row.class_id,
         Direction::FromDegrees(row.azimuth_deg, row.elevation_deg)});
  }
  return labels;
}

FrameLabels LabelsFromEvents(std::span<const EventAnnotation> events,
                             int num_frames) {
  FrameLabels labels;
  labels.Resize(num_frames);
  for (const EventAnnotation& event : events) {
    for (const TrackPoint& p : ExpandTrack(event)) {
      labels.Resize(p.frame + 1);
      labels.frames[p.frame].push_back({event.class_id.value_or(-1), p.doa});
    }
  }
  return labels;
}

namespace {

std::set<int> SegmentClasses(const FrameLabels& labels, int segment) {
  std::set<int> classes;
  const int begin = segment * kFramesPerSegment;
  const int end = std::min(labels.num_frames(), begin + kFramesPerSegment);
  for (int m = begin; m < end; ++m) {
    for (const LabeledDoa& l : labels.frames[m]) classes.insert(l.class_id);
  }
  return classes;
}

}  // namespace

SedScores SedMetrics(const FrameLabels& estimate, const FrameLabels& reference) {
  const int num_frames = std::max(estimate.num_frames(), reference.num_frames());
  const int num_segments =
      (num_frames + kFramesPerSegment - 1) / kFramesPerSegment;
  long tp = 0, fp = 0, fn = 0, subs = 0, dels = 0, ins = 0, n_ref = 0;
  for (int s = 0; s < num_segments; ++s) {
    const std::set<int> est = SegmentClasses(estimate, s);
    const std::set<int> ref = SegmentClasses(reference, s);
    long seg_tp = 0;
    for (int c : est) seg_tp += ref.count(c);
    const long seg_fp = static_cast<long>(est.size()) - seg_tp;
    const long seg_fn = static_cast<long>(ref.size()) - seg_tp;
    tp += seg_tp;
    fp += seg_fp;
    fn += seg_fn;
    subs += std::min(seg_fn, seg_fp);
    dels += std::max(0L, seg_fn - seg_fp);
    ins += std::max(0L, seg_fp - seg_fn);
    n_ref += static_cast<long>(ref.size());
  }
  SedScores scores;
  const double errors = static_cast<double>(subs + dels + ins);
  scores.er = n_ref > 0 ? errors / static_cast<double>(n_ref) : errors;
  const long denom = 2 * tp + fp + fn;
  scores.f = denom > 0 ? 2.0 * static_cast<double>(tp) / denom : 1.0;
  return scores;
}

std::vector<std::pair<int, int>> MinCostAssignment(
    const std::vector<std::vector<double>>& cost) {
  const int rows = static_cast<int>(cost.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(cost.front().size());
  if (rows == 0 || cols == 0) return {};
  // Shortest augmenting path formulation on a square-or-wide matrix; a tall
  // matrix is solved transposed.
  const bool transposed = rows > cols;
  const int n = transposed ? cols : rows;
  const int m = transposed ? rows : cols;
  auto c = [&](int i, int j) {
    return transposed ? cost[j - 1][i - 1] : cost[i - 1][j - 1];
  };
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
  std::vector<int> p(m + 1, 0), way(m + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(m + 1, kInf);
    std::vector<bool> used(m + 1, false);
    do {
      used[j0] = true;
      const int i0 = p[j0];
      double delta = kInf;
      int j1 = 0;
      for (int j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = c(i0, j) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::pair<int, int>> pairs;
  for (int j = 1; j <= m; ++j) {
    if (p[j] == 0) continue;
    if (transposed) {
      pairs.emplace_back(j - 1, p[j] - 1);
    } else {
      pairs.emplace_back(p[j] - 1, j - 1);
    }
  }
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

DoaScores DoaMetrics(const FrameLabels& estimate, const FrameLabels& reference) {
  const int num_frames = std::max(estimate.num_frames(), reference.num_frames());
  static const std::vector<LabeledDoa> kEmpty;
  double angle_sum = 0.0;
  long matched = 0, count_hits = 0;
  for (int m = 0; m < num_frames; ++m) {
    const auto& est = m < estimate.num_frames() ? estimate.frames[m] : kEmpty;
    const auto& ref = m < reference.num_frames() ? reference.frames[m] : kEmpty;
    if (est.size() == ref.size()) ++count_hits;
    if (est.empty() || ref.empty()) continue;
    std::vector<std::vector<double>> cost(est.size(),
                                          std::vector<double>(ref.size()));
    for (size_t i = 0; i < est.size(); ++i) {
      for (size_t j = 0; j < ref.size(); ++j) {
        cost[i][j] = CentralAngle(est[i].doa, ref[j].doa);
      }
    }
    for (const auto& [i, j] : MinCostAssignment(cost)) {
      angle_sum += cost[i][j];
      ++matched;
    }
  }
  DoaScores scores;
  scores.doa_deg =
      matched > 0 ? angle_sum / matched * kDegreesFromRadians : 0.0;
  scores.fr = num_frames > 0 ? static_cast<double>(count_hits) / num_frames : 1.0;
  return scores;
}

double SeldScore(double er, double f, double doa_deg, double fr) {
  return (er + (1.0 - f) + doa_deg / 180.0 + (1.0 - fr)) / 4.0;
}

MetricsReport Evaluate(const FrameLabels& estimate,
                       const FrameLabels& reference) {
  const SedScores sed = SedMetrics(estimate, reference);
  const DoaScores doa = DoaMetrics(estimate, reference);
  MetricsReport report;
  report.er = sed.er;
  report.f = sed.f;
  report.doa_deg = doa.doa_deg;
  report.fr = doa.fr;
  report.seld = SeldScore(sed.er, sed.f, doa.doa_deg, doa.fr);
  return report;
}

std::string FormatReport(const MetricsReport& r) {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "ER   %.4f\nF    %.4f\nDOA  %.4f deg\nFR   %.4f\nSELD %.4f\n",
                r.er, r.f, r.doa_deg, r.fr, r.seld);
  return buf;
}

std::string FormatReportCsv(const MetricsReport& r) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "er,f,doa_deg,fr,seld\n%.6f,%.6f,%.6f,%.6f,%.6f\n",
                r.er, r.f, r.doa_deg, r.fr, r.seld);
  return buf;
}

}  // namespace seld
