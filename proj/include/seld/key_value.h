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

#ifndef SELD_KEY_VALUE_H_
#define SELD_KEY_VALUE_H_

#include <string>
#include <string_view>
#include <vector>

namespace seld {

// Minimal "key = value" dialect shared by config and scene files. '#' starts
// a comment, blank lines are ignored and a line "[name]" opens a section.
struct KeyValueEntry {
  std::string key;
  std::string value;
  int line = 0;
};

struct KeyValueSection {
  std::string name;  // Empty for the leading, unnamed section.
  int line = 0;
  std::vector<KeyValueEntry> entries;
};

// Throws InputError on a line that is neither blank, a comment, a section
// header nor a key = value pair. |source| only decorates error messages.
std::vector<KeyValueSection> ParseKeyValue(std::string_view text,
                                           std::string_view source);

// Value parsers; errors name the entry's key and line.
double ParseDouble(const KeyValueEntry& entry);
long long ParseInteger(const KeyValueEntry& entry);
// Comma-separated numbers, e.g. "0, 8000".
std::vector<double> ParseDoubleList(const KeyValueEntry& entry);

std::string ReadTextFile(const std::string& path);

}  // namespace seld

#endif  // SELD_KEY_VALUE_H_
