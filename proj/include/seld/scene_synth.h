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

#ifndef SELD_SCENE_SYNTH_H_
#define SELD_SCENE_SYNTH_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "seld/ambisonics.h"
#include "seld/association.h"
#include "seld/direction.h"

namespace seld {

enum class SignalKind { kNoiseBurst, kTone, kChirp, kFile };

// A static plane-wave event. Gains are RMS values.
struct SceneEvent {
  SignalKind kind = SignalKind::kNoiseBurst;
  Direction direction;
  double onset_s = 0.0;
  double offset_s = 0.0;
  double gain = 1.0;
  int class_id = 0;
  // Noise bursts: optional pass band in Hz (brick-wall, FFT domain).
  std::optional<std::array<double, 2>> band_hz;
  double frequency_hz = 1000.0;                    // tones
  std::array<double, 2> chirp_hz = {500.0, 4000.0};  // linear sweep
  std::string path;                                // kind == kFile, mono WAV
  std::optional<std::uint64_t> seed;  // default: derived from the scene seed
};

struct SceneSpec {
  double duration_s = 1.0;
  double sample_rate_hz = 48000.0;
  std::vector<SceneEvent> events;
  // Isotropic noise level relative to the event power (mean W power over
  // samples where some event is active; unit power without events).
  std::optional<double> diffuse_snr_db;
  std::uint64_t seed = 0;
};

// Throws InputError for events outside the scene, offset <= onset, bad
// sample rates or a non-finite SNR.
void ValidateSceneSpec(const SceneSpec& spec);

// Scene file: top-level keys duration_s, sample_rate_hz, seed and
// diffuse_snr_db, then one [event] block per event with kind
// (noise-burst | tone | chirp | file), azimuth_deg, elevation_deg, onset_s,
// offset_s, gain, class_id, band_hz, frequency_hz, chirp_hz, path, seed.
// Relative file paths resolve against |base_dir|.
SceneSpec ParseSceneSpec(std::string_view text, const std::string& base_dir,
                         std::string_view source = "<scene>");
SceneSpec LoadSceneSpec(const std::string& path);

// The 24 vertices of the snub cube: one orbit of the octahedral rotation
// group, hence a spherical 3-design (sum of u = 0, sum of u u^T = 8 I).
const std::vector<Direction>& DiffuseFieldDirections();

struct SynthesizedScene {
  AmbisonicBuffer audio;                       // N3D, W X Y Z
  std::vector<EventAnnotation> reference;      // exact directions
};

// Events become frames [round(onset / hop), round(offset / hop) - 1].
std::vector<EventAnnotation> ReferenceEvents(const SceneSpec& spec,
                                             double frame_hop_s);
int SceneFrameCount(const SceneSpec& spec, double frame_hop_s);

// Each event is encoded as a plane wave and summed; the optional diffuse
// field is 24 decorrelated white noises from DiffuseFieldDirections().
// Deterministic given the seeds.
SynthesizedScene Synthesize(const SceneSpec& spec, double frame_hop_s = 0.02);

// The mono source signal of one event over the whole scene (zero outside).
std::vector<double> EventSignal(const SceneSpec& spec, size_t event_index);

}  // namespace seld

#endif  // SELD_SCENE_SYNTH_H_
