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

#ifndef SELD_CSV_IO_H_
#define SELD_CSV_IO_H_

#include <span>
#include <string>
#include <vector>

#include "seld/association.h"

namespace seld {

inline constexpr char kFrameCsvHeader[] = "frame,class,azimuth,elevation";
inline constexpr char kEventCsvHeader[] =
    "class,onset_s,offset_s,azimuth,elevation";
inline constexpr char kPredictionsCsvHeader[] = "event_id,class,prob";

// Exact text of the CSV files, header line included, '\n' line endings.
std::string FormatFrameCsv(std::span<const FrameRow> rows);
std::string FormatEventCsv(std::span<const EventRow> rows);

// Parsers throw InputError on a header or field mismatch.
std::vector<FrameRow> ParseFrameCsv(const std::string& text,
                                    const std::string& source = "<frames>");
std::vector<EventRow> ParseEventCsv(const std::string& text,
                                    const std::string& source = "<events>");

// Classifier output: one row per event index (0-based, event CSV order).
struct Prediction {
  int event_id = 0;
  int class_id = -1;
  double probability = 0.0;
};
std::vector<Prediction> ParsePredictionsCsv(
    const std::string& text, const std::string& source = "<predictions>");

std::vector<FrameRow> ReadFrameCsv(const std::string& path);
std::vector<EventRow> ReadEventCsv(const std::string& path);
std::vector<Prediction> ReadPredictionsCsv(const std::string& path);
void WriteTextFile(const std::string& path, const std::string& text);

}  // namespace seld

#endif  // SELD_CSV_IO_H_
