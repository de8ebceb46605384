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

// seld: synth | analyze | eval.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "seld/association.h"
#include "seld/config.h"
#include "seld/csv_io.h"
#include "seld/error.h"
#include "seld/metrics.h"
#include "seld/pipeline.h"
#include "seld/scene_synth.h"
#include "seld/wav_io.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitInput = 2;

seld::FrontEndParams ParamsFrom(const std::string& config_path) {
  return config_path.empty() ? seld::FrontEndParams{}
                             : seld::LoadParams(config_path);
}

void EnsureDirectory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw seld::InputError("cannot create directory '" + dir.string() + "'");
  }
}

double Ms(double seconds) { return seconds * 1000.0; }

struct SynthOptions {
  std::string spec;
  std::string out;
  std::string config;
};

void RunSynth(const SynthOptions& opt) {
  const seld::FrontEndParams params = ParamsFrom(opt.config);
  const seld::SceneSpec spec = seld::LoadSceneSpec(opt.spec);
  const seld::SynthesizedScene scene = seld::Synthesize(spec, params.frame_hop_s);
  EnsureDirectory(opt.out);
  const fs::path out(opt.out);
  seld::WriteAmbisonicWav((out / "scene.wav").string(), scene.audio,
                          seld::ChannelOrder::kAcn, seld::Normalization::kSN3D);
  const seld::Metadata meta = seld::EmitMetadata(scene.reference, params);
  seld::WriteTextFile((out / "scene_ref_events.csv").string(),
                      seld::FormatEventCsv(meta.events));
  seld::WriteTextFile((out / "scene_ref_frames.csv").string(),
                      seld::FormatFrameCsv(meta.frames));
}

struct AnalyzeOptions {
  std::string input;
  std::string out;
  std::string config;
  std::string channel_order = "acn";
  std::string norm = "sn3d";
  bool dump_planes = false;
  std::string classifier_cmd;
  std::string predictions;
  int jobs = 0;
};

void AnalyzeFile(const AnalyzeOptions& opt, const seld::FrontEndParams& params,
                 const fs::path& wav_path, const fs::path& out) {
  const auto order = opt.channel_order == "wxyz" ? seld::ChannelOrder::kWxyz
                                                 : seld::ChannelOrder::kAcn;
  const auto norm = opt.norm == "n3d" ? seld::Normalization::kN3D
                                      : seld::Normalization::kSN3D;
  const seld::AmbisonicBuffer signal =
      seld::ReadAmbisonicWav(wav_path.string(), order, norm);
  seld::AnalysisOutput result = seld::Analyze(signal, params);
  EnsureDirectory(out);

  const auto t0 = std::chrono::steady_clock::now();
  const auto beams =
      seld::BeamformEvents(signal, result.association.events, result.params);
  std::vector<std::string> event_files;
  for (size_t s = 0; s < beams.size(); ++s) {
    seld::WavData wav{signal.sample_rate_hz, {beams[s]}};
    if (wav.channels[0].empty()) wav.channels[0].push_back(0.0);
    const std::string name = "event_" + std::to_string(s) + ".wav";
    seld::WriteWav((out / name).string(), wav);
    event_files.push_back(name);
  }
  const double beamform_s = std::chrono::duration<double>(
                                std::chrono::steady_clock::now() - t0)
                                .count();

  std::vector<seld::Prediction> predictions;
  if (!opt.predictions.empty()) {
    predictions = seld::ReadPredictionsCsv(opt.predictions);
  } else if (!opt.classifier_cmd.empty()) {
    predictions = seld::RunClassifier(opt.classifier_cmd, out.string(),
                                      (out / "predictions.csv").string());
  }
  if (!predictions.empty() || !opt.classifier_cmd.empty()) {
    seld::ApplyPredictions(predictions, result.association.events);
    result.metadata = seld::EmitMetadata(result.association.events, result.params);
  }

  seld::WriteTextFile((out / "est_events.csv").string(),
                      seld::FormatEventCsv(result.metadata.events));
  seld::WriteTextFile((out / "est_frames.csv").string(),
                      seld::FormatFrameCsv(result.metadata.frames));
  if (opt.dump_planes) {
    const fs::path planes = out / "planes";
    EnsureDirectory(planes);
    seld::DumpAnalysis(result.analysis, planes.string());
  }

  nlohmann::json manifest;
  manifest["tool"] = "seld";
  manifest["version"] = SELD_VERSION;
  manifest["command"] = "analyze";
  manifest["input"] = fs::absolute(wav_path).string();
  manifest["output_dir"] = fs::absolute(out).string();
  manifest["config"] =
      opt.config.empty() ? "" : fs::absolute(opt.config).string();
  manifest["channel_order"] = opt.channel_order;
  manifest["normalization"] = opt.norm;
  manifest["classifier_cmd"] = opt.classifier_cmd;
  manifest["predictions"] = opt.predictions;
  manifest["params"] = seld::SerializeParams(result.params);
  manifest["num_frames"] = result.num_frames;
  manifest["num_events"] = result.association.events.size();
  manifest["event_wavs"] = event_files;
  manifest["timing_ms"] = {{"stft", Ms(result.timings.stft_s)},
                           {"doa", Ms(result.timings.doa_s)},
                           {"association", Ms(result.timings.association_s)},
                           {"beamform", Ms(beamform_s)},
                           {"total", Ms(result.timings.total_s + beamform_s)}};
  seld::WriteTextFile((out / "manifest.json").string(), manifest.dump(2) + "\n");
}

void RunAnalyze(const AnalyzeOptions& opt) {
  const seld::FrontEndParams params = ParamsFrom(opt.config);
  const fs::path input(opt.input);
  if (!fs::is_directory(input)) {
    AnalyzeFile(opt, params, input, opt.out);
    return;
  }
  // Directory input: one output subdirectory per WAV, files in parallel.
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(input)) {
    if (entry.is_regular_file() && entry.path().extension() == ".wav") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  const int workers = std::max(
      1, std::min<int>(opt.jobs > 0 ? opt.jobs
                                    : static_cast<int>(std::thread::hardware_concurrency()),
                       static_cast<int>(files.size())));
  std::mutex mutex;
  size_t next = 0;
  std::exception_ptr failure;
  const auto work = [&] {
    while (true) {
      size_t i;
      {
        std::lock_guard<std::mutex> lock(mutex);
        if (next >= files.size() || failure) return;
        i = next++;
      }
      try {
        AnalyzeFile(opt, params, files[i], fs::path(opt.out) / files[i].stem());
      } catch (...) {
        std::lock_guard<std::mutex> lock(mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> threads;
  for (int w = 0; w < workers; ++w) threads.emplace_back(work);
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
}

struct EvalOptions {
  std::string estimate;
  std::string reference;
  std::string out;
  int frames = 0;
};

void RunEval(const EvalOptions& opt) {
  const auto est_rows = seld::ReadFrameCsv(opt.estimate);
  const auto ref_rows = seld::ReadFrameCsv(opt.reference);
  const seld::FrameLabels est = seld::LabelsFromRows(est_rows, opt.frames);
  const seld::FrameLabels ref = seld::LabelsFromRows(ref_rows, opt.frames);
  const seld::MetricsReport report = seld::Evaluate(est, ref);
  const std::string text = seld::FormatReport(report);
  std::cout << text;
  if (!opt.out.empty()) {
    EnsureDirectory(opt.out);
    seld::WriteTextFile((fs::path(opt.out) / "metrics.txt").string(), text);
    seld::WriteTextFile((fs::path(opt.out) / "metrics.csv").string(),
                        seld::FormatReportCsv(report));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parametric SELD front-end for first-order ambisonics"};
  app.set_version_flag("--version", SELD_VERSION);
  app.require_subcommand(1);

  SynthOptions synth;
  auto* synth_cmd = app.add_subcommand("synth", "Render a scene spec to audio and reference CSVs");
  synth_cmd->add_option("spec", synth.spec, "Scene spec file")->required();
  synth_cmd->add_option("--out", synth.out, "Output directory")->required();
  synth_cmd->add_option("--config", synth.config, "Front-end config (frame hop)");

  AnalyzeOptions analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "Estimate events from a 4-channel WAV (or a directory of them)");
  analyze_cmd->add_option("input", analyze.input, "WAV file or directory")->required();
  analyze_cmd->add_option("--out", analyze.out, "Output directory")->required();
  analyze_cmd->add_option("--config", analyze.config, "Front-end config");
  analyze_cmd->add_option("--channel-order", analyze.channel_order, "Input channel order")
      ->check(CLI::IsMember({"acn", "wxyz"}));
  analyze_cmd->add_option("--norm", analyze.norm, "Input normalization")
      ->check(CLI::IsMember({"sn3d", "n3d"}));
  analyze_cmd->add_flag("--dump-planes", analyze.dump_planes, "Write intermediate planes");
  analyze_cmd->add_option("--classifier-cmd", analyze.classifier_cmd,
                          "Run as '<cmd> <out_dir> <predictions_csv>'");
  analyze_cmd->add_option("--predictions", analyze.predictions,
                          "Predictions CSV (event_id,class,prob)");
  analyze_cmd->add_option("--jobs", analyze.jobs, "Parallel files for directory input")
      ->check(CLI::NonNegativeNumber);

  EvalOptions eval;
  auto* eval_cmd = app.add_subcommand("eval", "Score estimated against reference frame CSVs");
  eval_cmd->add_option("estimate", eval.estimate, "Estimated frame CSV")->required();
  eval_cmd->add_option("reference", eval.reference, "Reference frame CSV")->required();
  eval_cmd->add_option("--out", eval.out, "Directory for metrics.txt and metrics.csv");
  eval_cmd->add_option("--frames", eval.frames, "Minimum number of frames")
      ->check(CLI::Range(0, 10000000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*synth_cmd) RunSynth(synth);
    if (*analyze_cmd) RunAnalyze(analyze);
    if (*eval_cmd) RunEval(eval);
  } catch (const std::exception& e) {
    std::cerr << "seld: " << e.what() << "\n";
    return kExitInput;
  }
  return 0;
}
