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

#ifndef TCN_IO_FORMATS_H_
#define TCN_IO_FORMATS_H_

// Feature and label files.
//
// Features (F0 x T):
//   CSV     one frame per line, F0 comma-separated reals.
//   binary  "TCNF", u32 version (1), u32 F0, u32 T, then T*F0 little-endian
//           f32 values frame-major (all channels of frame 0 first).
// Readers detect the format from the first four bytes.
//
// Labels: one decimal integer class id per line.

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tcn/nn/seq_tensor.h"

namespace tcn::io {

using FeatureSequence = nn::SeqTensor<float>;

enum class FeatureFormat { kCsv, kBinary };

inline constexpr uint32_t kFeatureFormatVersion = 1;

// Parse from memory; `source` names the input in error messages. Throws
// ParseError carrying a line (CSV) or byte offset (binary). An empty CSV or
// a binary file with F0 or T of zero is rejected because a sequence needs at
// least one frame and one channel.
FeatureSequence ParseFeatures(std::string_view contents,
                              const std::string& source = "features");
std::string FormatFeaturesCsv(const FeatureSequence& features);
std::string FormatFeaturesBinary(const FeatureSequence& features);

FeatureSequence ReadFeatures(const std::filesystem::path& path);
void WriteFeatures(const FeatureSequence& features,
                   const std::filesystem::path& path, FeatureFormat format);

// "tcnf" selects binary, anything else CSV.
FeatureFormat FeatureFormatForPath(const std::filesystem::path& path);

std::vector<int> ParseLabels(std::string_view contents,
                             const std::string& source = "labels");
std::string FormatLabels(std::span<const int> labels);

std::vector<int> ReadLabels(const std::filesystem::path& path);
void WriteLabels(std::span<const int> labels,
                 const std::filesystem::path& path);

}  // namespace tcn::io

#endif  // TCN_IO_FORMATS_H_
