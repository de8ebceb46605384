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

#include <cmath>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "oracles.h"

namespace seld {
namespace {

FrameLabels Stream(int frames) {
  FrameLabels l;
  l.Resize(frames);
  return l;
}

LabeledDoa At(int cls, double az, double el = 0) {
  return {cls, Direction::FromDegrees(az, el)};
}

FrameLabels RandomStream(std::mt19937_64& rng, int frames, int classes) {
  FrameLabels l = Stream(frames);
  std::uniform_real_distribution<double> az(-180, 180), el(-40, 40);
  for (auto& f : l.frames) {
    const int count = static_cast<int>(rng() % 3);
    for (int i = 0; i < count; ++i) {
      f.push_back(At(static_cast<int>(rng() % classes), az(rng), el(rng)));
    }
  }
  return l;
}

TEST(SeldScoreTest, PublishedRows) {
  EXPECT_NEAR(SeldScore(0.28, 0.854, 24.6, 0.857), 0.1764, 5e-4);
  EXPECT_NEAR(SeldScore(0.29, 0.821, 9.3, 0.758), 0.1907, 5e-4);
  EXPECT_NEAR(SeldScore(0.34, 0.799, 28.5, 0.854), 0.2113, 5e-4);
  EXPECT_NEAR(SeldScore(0.32, 0.797, 9.1, 0.764), 0.2026, 5e-4);
  EXPECT_EQ(SeldScore(0, 1, 0, 1), 0.0);
}

TEST(SedMetricsTest, Identity) {
  std::mt19937_64 rng(1);
  const FrameLabels l = RandomStream(rng, 230, 4);
  const SedScores s = SedMetrics(l, l);
  EXPECT_EQ(s.er, 0.0);
  EXPECT_EQ(s.f, 1.0);
}

TEST(SedMetricsTest, EmptyEstimate) {
  FrameLabels ref = Stream(100);
  ref.frames[3].push_back(At(1, 0));
  ref.frames[70].push_back(At(2, 0));
  const SedScores s = SedMetrics(Stream(100), ref);
  EXPECT_EQ(s.er, 1.0);
  EXPECT_EQ(s.f, 0.0);
}

TEST(SedMetricsTest, SubstitutionInOneSegment) {
  FrameLabels ref = Stream(50), est = Stream(50);
  ref.frames[10].push_back(At(0, 0));
  est.frames[10].push_back(At(1, 0));
  const SedScores s = SedMetrics(est, ref);
  EXPECT_EQ(s.er, 1.0);
  EXPECT_EQ(s.f, 0.0);
}

TEST(SedMetricsTest, NoReferenceCountsRawErrors) {
  FrameLabels est = Stream(60);
  est.frames[0].push_back(At(0, 0));
  est.frames[55].push_back(At(0, 0));
  EXPECT_EQ(SedMetrics(est, Stream(60)).er, 2.0);
  EXPECT_EQ(SedMetrics(Stream(60), Stream(60)).f, 1.0);
}

TEST(SedMetricsTest, MatchesOracleOnToyStreams) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 300; ++trial) {
    const int frames = 1 + static_cast<int>(rng() % 160);
    const FrameLabels est = RandomStream(rng, frames, 3);
    const FrameLabels ref = RandomStream(rng, 1 + static_cast<int>(rng() % 160), 3);
    const SedScores got = SedMetrics(est, ref);
    const SedScores want = oracle::SedMetrics(est, ref);
    ASSERT_EQ(got.er, want.er) << trial;
    ASSERT_EQ(got.f, want.f) << trial;
  }
}

TEST(AssignmentTest, MatchesPermutationSearch) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0, 3);
  for (int trial = 0; trial < 500; ++trial) {
    const size_t rows = 1 + rng() % 5, cols = 1 + rng() % 5;
    std::vector<std::vector<double>> cost(rows, std::vector<double>(cols));
    for (auto& r : cost) {
      for (double& v : r) v = u(rng);
    }
    const auto pairs = MinCostAssignment(cost);
    ASSERT_EQ(pairs.size(), std::min(rows, cols));
    double total = 0;
    std::vector<bool> row_used(rows), col_used(cols);
    for (auto [i, j] : pairs) {
      ASSERT_FALSE(row_used[i]);
      ASSERT_FALSE(col_used[j]);
      row_used[i] = col_used[j] = true;
      total += cost[i][j];
    }
    ASSERT_NEAR(total, oracle::BestAssignmentCost(cost), 1e-12);
  }
}

TEST(DoaMetricsTest, IdentityAndConstantOffset) {
  FrameLabels ref = Stream(40), est = Stream(40);
  for (int m = 5; m < 30; ++m) {
    ref.frames[m].push_back(At(0, 20 + m));
    est.frames[m].push_back(At(0, 30 + m));
  }
  const DoaScores same = DoaMetrics(ref, ref);
  EXPECT_EQ(same.doa_deg, 0.0);
  EXPECT_EQ(same.fr, 1.0);
  const DoaScores shifted = DoaMetrics(est, ref);
  EXPECT_NEAR(shifted.doa_deg, 10.0, 1e-9);
  EXPECT_EQ(shifted.fr, 1.0);
}

TEST(DoaMetricsTest, CountMismatchFrame) {
  FrameLabels ref = Stream(2), est = Stream(2);
  ref.frames[0] = {At(0, 0), At(1, 90)};
  est.frames[0] = {At(0, 80)};
  ref.frames[1] = {At(0, 0)};
  est.frames[1] = {At(0, 0)};
  const DoaScores s = DoaMetrics(est, ref);
  EXPECT_NEAR(s.doa_deg, 5.0, 1e-9);  // (10 + 0) / 2 matched pairs
  EXPECT_EQ(s.fr, 0.5);
}

TEST(DoaMetricsTest, MatchesOracle) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 300; ++trial) {
    const FrameLabels est = RandomStream(rng, 1 + static_cast<int>(rng() % 80), 2);
    const FrameLabels ref = RandomStream(rng, 1 + static_cast<int>(rng() % 80), 2);
    const DoaScores got = DoaMetrics(est, ref);
    const DoaScores want = oracle::DoaMetrics(est, ref);
    ASSERT_NEAR(got.doa_deg, want.doa_deg, 1e-9) << trial;
    ASSERT_EQ(got.fr, want.fr) << trial;
  }
}

TEST(EvaluateTest, EmptyEstimateAgainstReference) {
  FrameLabels ref = Stream(100);
  for (int m = 10; m < 60; ++m) ref.frames[m].push_back(At(0, 45));
  const MetricsReport r = Evaluate(Stream(0), ref);
  EXPECT_EQ(r.er, 1.0);
  EXPECT_EQ(r.f, 0.0);
  EXPECT_LT(r.fr, 1.0);
  EXPECT_EQ(r.fr, 0.5);
}

TEST(EvaluateTest, RotationInvariant) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> shift(-180, 180);
  for (int trial = 0; trial < 100; ++trial) {
    FrameLabels est = RandomStream(rng, 120, 3), ref = RandomStream(rng, 120, 3);
    const MetricsReport a = Evaluate(est, ref);
    const double s = shift(rng) * kRadiansFromDegrees;
    for (FrameLabels* l : {&est, &ref}) {
      for (auto& f : l->frames) {
        for (auto& d : f) d.doa = Direction::Make(d.doa.azimuth + s, d.doa.elevation);
      }
    }
    const MetricsReport b = Evaluate(est, ref);
    ASSERT_EQ(a.er, b.er);
    ASSERT_EQ(a.f, b.f);
    ASSERT_EQ(a.fr, b.fr);
    ASSERT_NEAR(a.doa_deg, b.doa_deg, 1e-9);
  }
}

TEST(LabelsTest, FromRowsAndEvents) {
  const std::vector<FrameRow> rows = {{2, 1, 30, 10}, {2, 0, -90, 0}, {4, 1, 31, 10}};
  const FrameLabels l = LabelsFromRows(rows, 3);
  ASSERT_EQ(l.num_frames(), 5);
  EXPECT_EQ(l.frames[2].size(), 2u);
  EXPECT_TRUE(l.frames[3].empty());
  EventAnnotation e;
  e.doa_track = {{1, Direction::FromDegrees(5, 0)}, {3, Direction::FromDegrees(6, 0)}};
  e.Refresh();
  const FrameLabels fe = LabelsFromEvents(std::vector<EventAnnotation>{e}, 10);
  EXPECT_EQ(fe.num_frames(), 10);
  EXPECT_EQ(fe.frames[2].size(), 1u);
  EXPECT_EQ(fe.frames[2][0].class_id, -1);
}

TEST(FormatTest, ReportLayouts) {
  const MetricsReport r{0.25, 0.5, 10.0, 0.75, 0.3};
  EXPECT_EQ(FormatReportCsv(r),
            "er,f,doa_deg,fr,seld\n0.250000,0.500000,10.000000,0.750000,0.300000\n");
  EXPECT_NE(FormatReport(r).find("SELD 0.3000"), std::string::npos);
}

}  // namespace
}  // namespace seld
