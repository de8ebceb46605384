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

#include "seld/wav_io.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <stdexcept>

#include "seld/error.h"

namespace seld {

namespace {

constexpr uint16_t kFormatPcm = 1;
constexpr uint16_t kFormatFloat = 3;
constexpr uint16_t kFormatExtensible = 0xFFFE;

uint32_t ReadU32(const uint8_t* p) {
  return p[0] | (p[1] << 8) | (p[2] << 16) | (static_cast<uint32_t>(p[3]) << 24);
}
uint16_t ReadU16(const uint8_t* p) { return static_cast<uint16_t>(p[0] | (p[1] << 8)); }

void PutU32(std::vector<uint8_t>& out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}
void PutU16(std::vector<uint8_t>& out, uint16_t v) {
  out.push_back(static_cast<uint8_t>(v));
  out.push_back(static_cast<uint8_t>(v >> 8));
}

double DecodeSample(const uint8_t* p, uint16_t format, int bits) {
  if (format == kFormatFloat) {
    if (bits == 32) {
      return static_cast<double>(std::bit_cast<float>(ReadU32(p)));
    }
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(p[i]) << (8 * i);
    return std::bit_cast<double>(v);
  }
  switch (bits) {
    case 16:
      return static_cast<int16_t>(ReadU16(p)) / 32768.0;
    case 24: {
      int32_t v = p[0] | (p[1] << 8) | (p[2] << 16);
      if (v & 0x800000) v -= 0x1000000;
      return v / 8388608.0;
    }
    case 32:
      return static_cast<int32_t>(ReadU32(p)) / 2147483648.0;
  }
  return 0.0;
}

}  // namespace

WavData ReadWav(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open WAV file '" + path + "'");
  const std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  const auto fail = [&](const std::string& what) {
    return InputError("'" + path + "': " + what);
  };
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw fail("not a RIFF/WAVE file");
  }
  uint16_t format = 0, channels = 0, bits = 0;
  uint32_t rate = 0;
  const uint8_t* data = nullptr;
  size_t data_size = 0;
  size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const uint8_t* chunk = bytes.data() + pos;
    const size_t size = ReadU32(chunk + 4);
    const size_t available = bytes.size() - pos - 8;
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (size < 16 || size > available) throw fail("bad fmt chunk");
      format = ReadU16(chunk + 8);
      channels = ReadU16(chunk + 10);
      rate = ReadU32(chunk + 12);
      bits = ReadU16(chunk + 22);
      if (format == kFormatExtensible) {
        if (size < 40) throw fail("bad extensible fmt chunk");
        format = ReadU16(chunk + 32);  // first two bytes of the subformat GUID
      }
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      data = chunk + 8;
      data_size = std::min(size, available);
    }
    pos += 8 + size + (size & 1);
  }
  if (channels == 0 || rate == 0) throw fail("missing fmt chunk");
  if (data == nullptr) throw fail("missing data chunk");
  const bool supported =
      (format == kFormatPcm && (bits == 16 || bits == 24 || bits == 32)) ||
      (format == kFormatFloat && (bits == 32 || bits == 64));
  if (!supported) {
    throw fail("unsupported sample format " + std::to_string(format) + "/" +
               std::to_string(bits) + " bit");
  }
  const size_t bytes_per_sample = bits / 8;
  const size_t frame_bytes = bytes_per_sample * channels;
  const size_t num_frames = data_size / frame_bytes;
  WavData wav;
  wav.sample_rate_hz = rate;
  wav.channels.assign(channels, std::vector<double>(num_frames));
  for (size_t t = 0; t < num_frames; ++t) {
    for (size_t c = 0; c < channels; ++c) {
      wav.channels[c][t] = DecodeSample(
          data + t * frame_bytes + c * bytes_per_sample, format, bits);
    }
  }
  return wav;
}

void WriteWav(const std::string& path, const WavData& wav, SampleFormat format) {
  const uint16_t channels = static_cast<uint16_t>(wav.channels.size());
  if (channels == 0) throw std::invalid_argument("no channels to write");
  const size_t frames = wav.num_samples();
  const uint16_t bits = format == SampleFormat::kPcm16   ? 16
                        : format == SampleFormat::kPcm24 ? 24
                                                         : 32;
  const uint16_t tag = format == SampleFormat::kFloat32 ? kFormatFloat : kFormatPcm;
  const uint32_t block = channels * (bits / 8);
  const uint32_t data_size = static_cast<uint32_t>(frames * block);
  const uint32_t rate = static_cast<uint32_t>(std::lround(wav.sample_rate_hz));

  std::vector<uint8_t> out;
  out.reserve(44 + data_size);
  out.insert(out.end(), {'R', 'I', 'F', 'F'});
  PutU32(out, 36 + data_size);
  out.insert(out.end(), {'W', 'A', 'V', 'E', 'f', 'm', 't', ' '});
  PutU32(out, 16);
  PutU16(out, tag);
  PutU16(out, channels);
  PutU32(out, rate);
  PutU32(out, rate * block);
  PutU16(out, static_cast<uint16_t>(block));
  PutU16(out, bits);
  out.insert(out.end(), {'d', 'a', 't', 'a'});
  PutU32(out, data_size);
  for (size_t t = 0; t < frames; ++t) {
    for (uint16_t c = 0; c < channels; ++c) {
      const double x = wav.channels[c][t];
      switch (format) {
        case SampleFormat::kFloat32:
          PutU32(out, std::bit_cast<uint32_t>(static_cast<float>(x)));
          break;
        case SampleFormat::kPcm16: {
          const long v = std::clamp(std::lround(x * 32768.0), -32768L, 32767L);
          PutU16(out, static_cast<uint16_t>(static_cast<int16_t>(v)));
          break;
        }
        case SampleFormat::kPcm24: {
          const long v =
              std::clamp(std::lround(x * 8388608.0), -8388608L, 8388607L);
          const uint32_t u = static_cast<uint32_t>(v) & 0xFFFFFF;
          out.push_back(static_cast<uint8_t>(u));
          out.push_back(static_cast<uint8_t>(u >> 8));
          out.push_back(static_cast<uint8_t>(u >> 16));
          break;
        }
      }
    }
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot write WAV file '" + path + "'");
  file.write(reinterpret_cast<const char*>(out.data()),
             static_cast<std::streamsize>(out.size()));
  if (!file) throw InputError("failed writing WAV file '" + path + "'");
}

AmbisonicBuffer ReadAmbisonicWav(const std::string& path, ChannelOrder order,
                                 Normalization normalization) {
  WavData wav = ReadWav(path);
  if (wav.channels.size() != kNumAmbisonicChannels) {
    throw InputError("'" + path + "' has " +
                     std::to_string(wav.channels.size()) +
                     " channels; first-order ambisonics needs 4");
  }
  return FromExternalLayout(std::move(wav.channels), wav.sample_rate_hz, order,
                            normalization);
}

void WriteAmbisonicWav(const std::string& path, const AmbisonicBuffer& buffer,
                       ChannelOrder order, Normalization normalization,
                       SampleFormat format) {
  WavData wav;
  wav.sample_rate_hz = buffer.sample_rate_hz;
  wav.channels = ToExternalLayout(buffer, order, normalization);
  WriteWav(path, wav, format);
}

}  // namespace seld
