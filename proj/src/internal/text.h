// Copyright 2026 The TCN Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// SPDX-License-Identifier: Apache-2.0

#ifndef TCN_INTERNAL_TEXT_H_
#define TCN_INTERNAL_TEXT_H_

// Small text-parsing and file helpers shared by the readers and writers.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace tcn::internal {

std::string_view Trim(std::string_view s);
std::vector<std::string_view> Split(std::string_view s, char sep);

struct KeyValue {
  std::string key;
  std::string value;
  size_t line = 0;  // 1-based
};

// "key=value" lines; blank lines and lines starting with '#' are skipped,
// whitespace around keys and values is trimmed. Throws ParseError (with the
// line) on lines without '=' or on duplicate keys.
std::vector<KeyValue> ParseKeyValueLines(std::string_view text,
                                         const std::string& source);

// Strict whole-token conversions; return false on any leftover character or
// overflow.
bool ParseInt64(std::string_view s, int64_t& out);
bool ParseDouble(std::string_view s, double& out);
bool ParseFloat(std::string_view s, float& out);

// Shortest representation that reads back to the same value.
std::string FormatDouble(double v);
std::string FormatFloat(float v);

// Throw IoError on failure.
std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, std::string_view contents);

}  // namespace tcn::internal

#endif  // TCN_INTERNAL_TEXT_H_
