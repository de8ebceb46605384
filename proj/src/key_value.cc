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

#include "seld/key_value.h"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "seld/error.h"

namespace seld {

namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string Where(const KeyValueEntry& entry) {
  return "key '" + entry.key + "' (line " + std::to_string(entry.line) + ")";
}

double ParseDoubleToken(std::string_view token, const KeyValueEntry& entry) {
  const std::string s(Trim(token));
  if (s.empty()) throw InputError("empty value for " + Where(entry));
  char* end = nullptr;
  errno = 0;
  const double value = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(value)) {
    throw InputError("malformed number '" + s + "' for " + Where(entry));
  }
  return value;
}

}  // namespace

std::vector<KeyValueSection> ParseKeyValue(std::string_view text,
                                           std::string_view source) {
  std::vector<KeyValueSection> sections(1);
  int line_number = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_number;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = Trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        throw InputError(std::string(source) + ":" +
                         std::to_string(line_number) +
                         ": malformed section header");
      }
      KeyValueSection section;
      section.name = std::string(Trim(line.substr(1, line.size() - 2)));
      section.line = line_number;
      sections.push_back(std::move(section));
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw InputError(std::string(source) + ":" + std::to_string(line_number) +
                       ": expected 'key = value'");
    }
    KeyValueEntry entry;
    entry.key = std::string(Trim(line.substr(0, eq)));
    entry.value = std::string(Trim(line.substr(eq + 1)));
    entry.line = line_number;
    if (entry.key.empty()) {
      throw InputError(std::string(source) + ":" + std::to_string(line_number) +
                       ": missing key");
    }
    sections.back().entries.push_back(std::move(entry));
  }
  return sections;
}

double ParseDouble(const KeyValueEntry& entry) {
  return ParseDoubleToken(entry.value, entry);
}

long long ParseInteger(const KeyValueEntry& entry) {
  const double value = ParseDouble(entry);
  if (value != std::floor(value) || std::fabs(value) > 9.0e15) {
    throw InputError("expected an integer for " + Where(entry));
  }
  return static_cast<long long>(value);
}

std::vector<double> ParseDoubleList(const KeyValueEntry& entry) {
  std::vector<double> values;
  std::string_view rest = entry.value;
  while (true) {
    const auto comma = rest.find(',');
    values.push_back(ParseDoubleToken(rest.substr(0, comma), entry));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return values;
}

std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace seld
