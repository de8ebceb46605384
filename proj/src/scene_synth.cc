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

#include "seld/scene_synth.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>
#include <set>

#include "real_fft.h"
#include "seld/error.h"
#include "seld/key_value.h"
#include "seld/wav_io.h"

namespace seld {

namespace {

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t SubSeed(std::uint64_t seed, std::uint64_t stream) {
  return SplitMix64(seed ^ SplitMix64(stream));
}

std::vector<double> GaussianNoise(size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> out(n);
  for (double& x : out) x = normal(rng);
  return out;
}

void BandLimit(std::vector<double>& x, double sample_rate_hz,
               const std::array<double, 2>& band) {
  if (x.size() < 2) return;
  const internal::RealFft fft(static_cast<int>(x.size()));
  std::vector<std::complex<double>> bins(x.size() / 2 + 1);
  fft.Forward(x, bins);
  for (size_t k = 0; k < bins.size(); ++k) {
    const double f = k * sample_rate_hz / x.size();
    if (f < band[0] || f > band[1]) bins[k] = 0.0;
  }
  fft.Inverse(bins, x);
}

void ScaleToRms(std::vector<double>& x, double rms) {
  double power = 0.0;
  for (double v : x) power += v * v;
  if (power <= 0.0) return;
  const double scale = rms / std::sqrt(power / x.size());
  for (double& v : x) v *= scale;
}

size_t ToSample(double seconds, double sample_rate_hz) {
  return static_cast<size_t>(std::llround(seconds * sample_rate_hz));
}

size_t NumSamples(const SceneSpec& spec) {
  return ToSample(spec.duration_s, spec.sample_rate_hz);
}

SignalKind ParseKind(const KeyValueEntry& e) {
  if (e.value == "noise-burst") return SignalKind::kNoiseBurst;
  if (e.value == "tone") return SignalKind::kTone;
  if (e.value == "chirp") return SignalKind::kChirp;
  if (e.value == "file") return SignalKind::kFile;
  throw InputError("unknown event kind '" + e.value + "' (line " +
                   std::to_string(e.line) + ")");
}

std::array<double, 2> ParsePair(const KeyValueEntry& e) {
  const std::vector<double> v = ParseDoubleList(e);
  if (v.size() != 2) {
    throw InputError("key '" + e.key + "' expects two values (line " +
                     std::to_string(e.line) + ")");
  }
  return {v[0], v[1]};
}

std::uint64_t ParseSeed(const KeyValueEntry& e) {
  const long long v = ParseInteger(e);
  if (v < 0) throw InputError("seed must be non-negative (line " +
                              std::to_string(e.line) + ")");
  return static_cast<std::uint64_t>(v);
}

}  // namespace

void ValidateSceneSpec(const SceneSpec& spec) {
  if (!(spec.duration_s > 0.0)) throw InputError("duration_s must be positive");
  if (!(spec.sample_rate_hz > 0.0)) {
    throw InputError("sample_rate_hz must be positive");
  }
  if (spec.diffuse_snr_db && !std::isfinite(*spec.diffuse_snr_db)) {
    throw InputError("diffuse_snr_db must be finite");
  }
  for (size_t i = 0; i < spec.events.size(); ++i) {
    const SceneEvent& e = spec.events[i];
    const std::string which = "event " + std::to_string(i);
    if (e.onset_s < 0.0 || e.offset_s > spec.duration_s) {
      throw InputError(which + " lies outside the scene duration");
    }
    if (!(e.offset_s > e.onset_s)) {
      throw InputError(which + " needs offset_s > onset_s");
    }
    if (!(e.gain >= 0.0)) throw InputError(which + " has a negative gain");
    if (e.band_hz && !((*e.band_hz)[0] < (*e.band_hz)[1])) {
      throw InputError(which + " has an inverted band");
    }
    if (e.kind == SignalKind::kFile && e.path.empty()) {
      throw InputError(which + " of kind file needs a path");
    }
  }
}

SceneSpec ParseSceneSpec(std::string_view text, const std::string& base_dir,
                         std::string_view source) {
  const auto sections = ParseKeyValue(text, source);
  SceneSpec spec;
  bool have_duration = false;
  const auto unknown = [&](const KeyValueEntry& e) {
    return InputError(std::string(source) + ":" + std::to_string(e.line) +
                      ": unknown key '" + e.key + "'");
  };
  for (const KeyValueEntry& e : sections.front().entries) {
    if (e.key == "duration_s") {
      spec.duration_s = ParseDouble(e);
      have_duration = true;
    } else if (e.key == "sample_rate_hz") {
      spec.sample_rate_hz = ParseDouble(e);
    } else if (e.key == "seed") {
      spec.seed = ParseSeed(e);
    } else if (e.key == "diffuse_snr_db") {
      spec.diffuse_snr_db = ParseDouble(e);
    } else {
      throw unknown(e);
    }
  }
  if (!have_duration) throw InputError(std::string(source) + ": missing duration_s");

  for (size_t s = 1; s < sections.size(); ++s) {
    if (sections[s].name != "event") {
      throw InputError(std::string(source) + ":" +
                       std::to_string(sections[s].line) +
                       ": unknown section '" + sections[s].name + "'");
    }
    SceneEvent event;
    double azimuth_deg = 0.0, elevation_deg = 0.0;
    std::set<std::string> required = {"onset_s", "offset_s"};
    for (const KeyValueEntry& e : sections[s].entries) {
      required.erase(e.key);
      if (e.key == "kind") {
        event.kind = ParseKind(e);
      } else if (e.key == "azimuth_deg") {
        azimuth_deg = ParseDouble(e);
      } else if (e.key == "elevation_deg") {
        elevation_deg = ParseDouble(e);
        if (elevation_deg < -90.0 || elevation_deg > 90.0) {
          throw InputError("elevation_deg outside [-90, 90] (line " +
                           std::to_string(e.line) + ")");
        }
      } else if (e.key == "onset_s") {
        event.onset_s = ParseDouble(e);
      } else if (e.key == "offset_s") {
        event.offset_s = ParseDouble(e);
      } else if (e.key == "gain") {
        event.gain = ParseDouble(e);
      } else if (e.key == "class_id") {
        event.class_id = static_cast<int>(ParseInteger(e));
      } else if (e.key == "band_hz") {
        event.band_hz = ParsePair(e);
      } else if (e.key == "frequency_hz") {
        event.frequency_hz = ParseDouble(e);
      } else if (e.key == "chirp_hz") {
        event.chirp_hz = ParsePair(e);
      } else if (e.key == "path") {
        const std::filesystem::path p(e.value);
        event.path = p.is_absolute()
                         ? p.string()
                         : (std::filesystem::path(base_dir) / p).string();
      } else if (e.key == "seed") {
        event.seed = ParseSeed(e);
      } else {
        throw unknown(e);
      }
    }
    if (!required.empty()) {
      throw InputError(std::string(source) + ":" +
                       std::to_string(sections[s].line) + ": event misses '" +
                       *required.begin() + "'");
    }
    event.direction = Direction::FromDegrees(azimuth_deg, elevation_deg);
    spec.events.push_back(std::move(event));
  }
  ValidateSceneSpec(spec);
  return spec;
}

SceneSpec LoadSceneSpec(const std::string& path) {
  return ParseSceneSpec(ReadTextFile(path),
                        std::filesystem::path(path).parent_path().string(),
                        path);
}

const std::vector<Direction>& DiffuseFieldDirections() {
  static const std::vector<Direction> directions = [] {
    // Tribonacci constant: t^3 = t^2 + t + 1.
    const double t = 1.839286755214161132551852564653286600424;
    const std::array<double, 3> base = {1.0, 1.0 / t, t};
    std::vector<Direction> out;
    std::array<int, 3> perm = {0, 1, 2};
    do {
      int inversions = 0;
      for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) inversions += perm[i] > perm[j];
      }
      const int parity = inversions % 2;
      for (int signs = 0; signs < 8; ++signs) {
        std::array<double, 3> v;
        int positives = 0;
        for (int a = 0; a < 3; ++a) {
          const bool negative = (signs >> a) & 1;
          positives += !negative;
          v[a] = (negative ? -1.0 : 1.0) * base[perm[a]];
        }
        // Even permutations take an even number of plus signs, odd ones odd.
        if (positives % 2 != parity) continue;
        out.push_back(Direction::Make(std::atan2(v[1], v[0]),
                                      std::atan2(v[2], std::hypot(v[0], v[1]))));
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
  }();
  return directions;
}

std::vector<double> EventSignal(const SceneSpec& spec, size_t event_index) {
  const SceneEvent& e = spec.events.at(event_index);
  const size_t total = NumSamples(spec);
  const size_t begin = std::min(total, ToSample(e.onset_s, spec.sample_rate_hz));
  const size_t end = std::min(total, ToSample(e.offset_s, spec.sample_rate_hz));
  std::vector<double> out(total, 0.0);
  if (end <= begin) return out;
  const size_t length = end - begin;
  const std::uint64_t seed =
      e.seed.value_or(SubSeed(spec.seed, event_index + 1));
  std::vector<double> segment;
  const double fs = spec.sample_rate_hz;
  switch (e.kind) {
    case SignalKind::kNoiseBurst:
      segment = GaussianNoise(length, seed);
      if (e.band_hz) BandLimit(segment, fs, *e.band_hz);
      ScaleToRms(segment, e.gain);
      break;
    case SignalKind::kTone: {
      segment.resize(length);
      const double amplitude = e.gain * std::sqrt(2.0);
      for (size_t i = 0; i < length; ++i) {
        segment[i] = amplitude * std::sin(kTwoPi * e.frequency_hz * i / fs);
      }
      break;
    }
    case SignalKind::kChirp: {
      segment.resize(length);
      const double amplitude = e.gain * std::sqrt(2.0);
      const double span_s = length / fs;
      const double rate = (e.chirp_hz[1] - e.chirp_hz[0]) / span_s;
      for (size_t i = 0; i < length; ++i) {
        const double t = i / fs;
        segment[i] = amplitude *
                     std::sin(kTwoPi * (e.chirp_hz[0] * t + 0.5 * rate * t * t));
      }
      break;
    }
    case SignalKind::kFile: {
      const WavData wav = ReadWav(e.path);
      if (wav.num_samples() == 0) throw InputError("'" + e.path + "' is empty");
      if (wav.sample_rate_hz != fs) {
        throw InputError("'" + e.path + "' sample rate differs from the scene");
      }
      segment.resize(length);
      for (size_t i = 0; i < length; ++i) {
        segment[i] = e.gain * wav.channels[0][i % wav.num_samples()];
      }
      break;
    }
  }
  std::copy(segment.begin(), segment.end(), out.begin() + begin);
  return out;
}

std::vector<EventAnnotation> ReferenceEvents(const SceneSpec& spec,
                                             double frame_hop_s) {
  std::vector<EventAnnotation> events;
  for (const SceneEvent& e : spec.events) {
    const int first = static_cast<int>(std::lround(e.onset_s / frame_hop_s));
    const int last = static_cast<int>(std::lround(e.offset_s / frame_hop_s)) - 1;
    if (last < first) continue;
    EventAnnotation event;
    for (int m = first; m <= last; ++m) event.doa_track.push_back({m, e.direction});
    event.onset = first;
    event.offset = last;
    event.median_doa = e.direction;
    event.class_id = e.class_id;
    events.push_back(std::move(event));
  }
  std::stable_sort(events.begin(), events.end(),
                   [](const EventAnnotation& a, const EventAnnotation& b) {
                     return a.onset < b.onset;
                   });
  return events;
}

int SceneFrameCount(const SceneSpec& spec, double frame_hop_s) {
  return static_cast<int>(std::ceil(spec.duration_s / frame_hop_s - 1e-9));
}

SynthesizedScene Synthesize(const SceneSpec& spec, double frame_hop_s) {
  ValidateSceneSpec(spec);
  const size_t total = NumSamples(spec);
  SynthesizedScene scene;
  scene.audio = AmbisonicBuffer::Zeros(total, spec.sample_rate_hz);
  std::vector<bool> active(total, false);
  for (size_t i = 0; i < spec.events.size(); ++i) {
    const std::vector<double> mono = EventSignal(spec, i);
    const auto gains = ShEval(spec.events[i].direction);
    for (int c = 0; c < kNumAmbisonicChannels; ++c) {
      for (size_t t = 0; t < total; ++t) {
        scene.audio.channels[c][t] += gains[c] * mono[t];
      }
    }
    const size_t begin = std::min(total, ToSample(spec.events[i].onset_s, spec.sample_rate_hz));
    const size_t end = std::min(total, ToSample(spec.events[i].offset_s, spec.sample_rate_hz));
    std::fill(active.begin() + begin, active.begin() + end, true);
  }

  if (spec.diffuse_snr_db) {
    double event_power = 1.0;
    const size_t active_samples = std::count(active.begin(), active.end(), true);
    if (active_samples > 0) {
      double acc = 0.0;
      for (size_t t = 0; t < total; ++t) {
        if (active[t]) acc += scene.audio.channels[kW][t] * scene.audio.channels[kW][t];
      }
      event_power = acc / active_samples;
    }
    const auto& directions = DiffuseFieldDirections();
    // The W channel sums the unit-variance noises, so each gets 1/24 of the
    // target power.
    const double target = event_power * std::pow(10.0, -*spec.diffuse_snr_db / 10.0);
    const double per_source = std::sqrt(target / directions.size());
    for (size_t d = 0; d < directions.size(); ++d) {
      const std::vector<double> noise =
          GaussianNoise(total, SubSeed(spec.seed, 0x5EED0000ULL + d));
      const auto gains = ShEval(directions[d]);
      for (int c = 0; c < kNumAmbisonicChannels; ++c) {
        for (size_t t = 0; t < total; ++t) {
          scene.audio.channels[c][t] += per_source * gains[c] * noise[t];
        }
      }
    }
  }
  scene.reference = ReferenceEvents(spec, frame_hop_s);
  return scene;
}

}  // namespace seld
