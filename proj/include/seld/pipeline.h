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

#ifndef SELD_PIPELINE_H_
#define SELD_PIPELINE_H_

#include <span>
#include <string>
#include <vector>

#include "seld/ambisonics.h"
#include "seld/association.h"
#include "seld/config.h"
#include "seld/csv_io.h"
#include "seld/parametric_analysis.h"

namespace seld {

struct StageTimings {
  double stft_s = 0.0;
  double doa_s = 0.0;
  double association_s = 0.0;
  double total_s = 0.0;
};

struct AnalysisOutput {
  FrontEndParams params;  // sample_rate_hz follows the input
  int num_frames = 0;
  DoaAnalysis analysis;
  AssociationResult association;
  Metadata metadata;
  StageTimings timings;
};

// Frames needed to cover |num_samples|: ceil(duration / frame_hop_s).
int FrameCount(size_t num_samples, double sample_rate_hz,
               const FrontEndParams& params);

// STFT -> DOA analysis -> association -> metadata. Throws InputError when
// the signal is shorter than one STFT window.
AnalysisOutput Analyze(const AmbisonicBuffer& signal,
                       const FrontEndParams& params);

// Beamforms |signal| towards each event's median DOA over the event's frame
// span. Returns one mono signal per event.
std::vector<std::vector<double>> BeamformEvents(
    const AmbisonicBuffer& signal, std::span<const EventAnnotation> events,
    const FrontEndParams& params);

// Assigns the most probable class per event id (ties: lower class id).
// Events without predictions, or predicted as -1, become unclassified.
// Throws InputError for event ids outside [0, events.size()).
void ApplyPredictions(std::span<const Prediction> predictions,
                      std::span<EventAnnotation> events);

// Runs "<command> <event_dir> <predictions_csv>" through the shell and
// reads the predictions it wrote. Throws InputError on failure.
std::vector<Prediction> RunClassifier(const std::string& command,
                                      const std::string& event_dir,
                                      const std::string& predictions_csv);

}  // namespace seld

#endif  // SELD_PIPELINE_H_
