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

#include "seld/pipeline.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <map>

#include "seld/error.h"
#include "seld/stft.h"

namespace seld {

namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point from, Clock::time_point to) {
  return std::chrono::duration<double>(to - from).count();
}

std::string ShellQuote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

}  // namespace

int FrameCount(size_t num_samples, double sample_rate_hz,
               const FrontEndParams& params) {
  const double duration = num_samples / sample_rate_hz;
  return static_cast<int>(std::ceil(duration / params.frame_hop_s - 1e-9));
}

AnalysisOutput Analyze(const AmbisonicBuffer& signal,
                       const FrontEndParams& params) {
  AnalysisOutput out;
  out.params = params;
  out.params.sample_rate_hz = signal.sample_rate_hz;
  ValidateParams(out.params);
  if (signal.num_samples() < static_cast<size_t>(params.stft_window_size)) {
    throw InputError("signal is shorter than one STFT window");
  }
  out.num_frames =
      FrameCount(signal.num_samples(), signal.sample_rate_hz, out.params);

  const auto t0 = Clock::now();
  const Spectrogram spectrogram = Stft(signal, out.params);
  const auto t1 = Clock::now();
  out.analysis = AnalyzeDoa(spectrogram, out.params);
  const auto t2 = Clock::now();
  out.association = Associate(out.analysis.map, out.params, out.num_frames);
  out.metadata = EmitMetadata(out.association.events, out.params);
  const auto t3 = Clock::now();
  out.timings = {Seconds(t0, t1), Seconds(t1, t2), Seconds(t2, t3),
                 Seconds(t0, t3)};
  return out;
}

std::vector<std::vector<double>> BeamformEvents(
    const AmbisonicBuffer& signal, std::span<const EventAnnotation> events,
    const FrontEndParams& params) {
  std::vector<std::vector<double>> out;
  const double samples_per_frame = params.frame_hop_s * signal.sample_rate_hz;
  for (const EventAnnotation& event : events) {
    const std::vector<double> beam = Beamform(signal, event.median_doa);
    const auto clip = [&](double v) {
      return std::clamp<size_t>(static_cast<size_t>(std::max(0.0, std::round(v))),
                                0, beam.size());
    };
    const size_t begin = clip(event.onset * samples_per_frame);
    const size_t end = clip((event.offset + 1) * samples_per_frame);
    out.emplace_back(beam.begin() + begin, beam.begin() + std::max(begin, end));
  }
  return out;
}

void ApplyPredictions(std::span<const Prediction> predictions,
                      std::span<EventAnnotation> events) {
  std::map<int, Prediction> best;
  for (const Prediction& p : predictions) {
    if (p.event_id < 0 || p.event_id >= static_cast<int>(events.size())) {
      throw InputError("prediction for unknown event id " +
                       std::to_string(p.event_id));
    }
    auto it = best.find(p.event_id);
    if (it == best.end() || p.probability > it->second.probability ||
        (p.probability == it->second.probability &&
         p.class_id < it->second.class_id)) {
      best[p.event_id] = p;
    }
  }
  for (size_t i = 0; i < events.size(); ++i) {
    auto it = best.find(static_cast<int>(i));
    if (it == best.end() || it->second.class_id < 0) {
      events[i].class_id.reset();
    } else {
      events[i].class_id = it->second.class_id;
    }
  }
}

std::vector<Prediction> RunClassifier(const std::string& command,
                                      const std::string& event_dir,
                                      const std::string& predictions_csv) {
  const std::string line = command + " " + ShellQuote(event_dir) + " " +
                           ShellQuote(predictions_csv);
  const int status = std::system(line.c_str());
  if (status != 0) {
    throw InputError("classifier command failed (status " +
                     std::to_string(status) + ")");
  }
  return ReadPredictionsCsv(predictions_csv);
}

}  // namespace seld
