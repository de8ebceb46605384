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

#include "seld/csv_io.h"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "seld/error.h"
#include "seld/key_value.h"

namespace seld {

namespace {

// Splits into trimmed non-empty lines ('\r' tolerated).
std::vector<std::string> Lines(const std::string& text) {
  std::vector<std::string> lines;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(pos, end - pos);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) {
      line.pop_back();
    }
    if (!line.empty()) lines.push_back(std::move(line));
    pos = end + 1;
  }
  return lines;
}

std::vector<std::string> Split(const std::string& line) {
  std::vector<std::string> fields;
  size_t pos = 0;
  while (true) {
    const size_t comma = line.find(',', pos);
    fields.push_back(line.substr(pos, comma - pos));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return fields;
}

// About 55 hours of 20 ms frames.
constexpr int kMaxFrameIndex = 10000000;

class RowParser {
 public:
  RowParser(const std::string& source, size_t line)
      : source_(source), line_(line) {}

  InputError Error(const std::string& what) const {
    return InputError(source_ + ":" + std::to_string(line_) + ": " + what);
  }

  int Int(const std::string& field) const {
    char* end = nullptr;
    errno = 0;
    const long v = std::strtol(field.c_str(), &end, 10);
    if (field.empty() || *end != '\0' || errno == ERANGE || v < -2147483647L ||
        v > 2147483647L) {
      throw Error("expected an integer, got '" + field + "'");
    }
    return static_cast<int>(v);
  }

  double Double(const std::string& field) const {
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(field.c_str(), &end);
    if (field.empty() || *end != '\0' || errno == ERANGE || !std::isfinite(v)) {
      throw Error("expected a number, got '" + field + "'");
    }
    return v;
  }

 private:
  const std::string& source_;
  size_t line_;
};

template <typename Row, typename ParseFn>
std::vector<Row> ParseCsv(const std::string& text, const std::string& source,
                          const char* header, size_t num_fields,
                          ParseFn parse) {
  const std::vector<std::string> lines = Lines(text);
  if (lines.empty() || lines.front() != header) {
    throw InputError(source + ": expected header '" + header + "'");
  }
  std::vector<Row> rows;
  for (size_t i = 1; i < lines.size(); ++i) {
    const RowParser parser(source, i + 1);
    const std::vector<std::string> fields = Split(lines[i]);
    if (fields.size() != num_fields) {
      throw parser.Error("expected " + std::to_string(num_fields) +
                         " fields, got " + std::to_string(fields.size()));
    }
    rows.push_back(parse(parser, fields));
  }
  return rows;
}

}  // namespace

std::string FormatFrameCsv(std::span<const FrameRow> rows) {
  std::string out = std::string(kFrameCsvHeader) + "\n";
  for (const FrameRow& r : rows) {
    out += std::to_string(r.frame) + "," + std::to_string(r.class_id) + "," +
           std::to_string(r.azimuth_deg) + "," +
           std::to_string(r.elevation_deg) + "\n";
  }
  return out;
}

std::string FormatEventCsv(std::span<const EventRow> rows) {
  std::string out = std::string(kEventCsvHeader) + "\n";
  char buf[128];
  for (const EventRow& r : rows) {
    std::snprintf(buf, sizeof(buf), "%d,%.2f,%.2f,%d,%d\n", r.class_id,
                  r.onset_s, r.offset_s, r.azimuth_deg, r.elevation_deg);
    out += buf;
  }
  return out;
}

std::vector<FrameRow> ParseFrameCsv(const std::string& text,
                                    const std::string& source) {
  return ParseCsv<FrameRow>(
      text, source, kFrameCsvHeader, 4,
      [](const RowParser& p, const std::vector<std::string>& f) {
        FrameRow row{p.Int(f[0]), p.Int(f[1]), p.Int(f[2]), p.Int(f[3])};
        if (row.frame < 0) throw p.Error("negative frame index");
        if (row.frame > kMaxFrameIndex) throw p.Error("frame index too large");
        if (row.azimuth_deg <= -180 || row.azimuth_deg > 180) {
          throw p.Error("azimuth outside (-180, 180]");
        }
        if (row.elevation_deg < -90 || row.elevation_deg > 90) {
          throw p.Error("elevation outside [-90, 90]");
        }
        return row;
      });
}

std::vector<EventRow> ParseEventCsv(const std::string& text,
                                    const std::string& source) {
  return ParseCsv<EventRow>(
      text, source, kEventCsvHeader, 5,
      [](const RowParser& p, const std::vector<std::string>& f) {
        return EventRow{p.Int(f[0]), p.Double(f[1]), p.Double(f[2]),
                        p.Int(f[3]), p.Int(f[4])};
      });
}

std::vector<Prediction> ParsePredictionsCsv(const std::string& text,
                                            const std::string& source) {
  return ParseCsv<Prediction>(
      text, source, kPredictionsCsvHeader, 3,
      [](const RowParser& p, const std::vector<std::string>& f) {
        const Prediction row{p.Int(f[0]), p.Int(f[1]), p.Double(f[2])};
        if (row.class_id < -1) throw p.Error("class below -1");
        if (row.probability < 0.0 || row.probability > 1.0) {
          throw p.Error("probability outside [0, 1]");
        }
        return row;
      });
}

std::vector<FrameRow> ReadFrameCsv(const std::string& path) {
  return ParseFrameCsv(ReadTextFile(path), path);
}

std::vector<EventRow> ReadEventCsv(const std::string& path) {
  return ParseEventCsv(ReadTextFile(path), path);
}

std::vector<Prediction> ReadPredictionsCsv(const std::string& path) {
  return ParsePredictionsCsv(ReadTextFile(path), path);
}

void WriteTextFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
  if (!out) throw InputError("failed writing '" + path + "'");
}

}  // namespace seld
