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

#include "tcn/io/formats.h"

#include <climits>

#include "internal/bytes.h"
#include "internal/text.h"
#include "tcn/error.h"

namespace tcn::io {
namespace {

constexpr std::string_view kFeatureMagic = "TCNF";

FeatureSequence ParseBinary(std::string_view contents,
                            const std::string& source) {
  internal::ByteReader r(reinterpret_cast<const uint8_t*>(contents.data()),
                         contents.size(), source);
  r.Raw(4, "magic");
  const uint32_t version = r.U32("version");
  if (version != kFeatureFormatVersion) {
    r.Fail("unsupported feature format version " + std::to_string(version));
  }
  const uint32_t dim = r.U32("feature dimension");
  const uint32_t frames = r.U32("frame count");
  if (dim == 0 || frames == 0) {
    r.Fail("empty feature sequence (F0=" + std::to_string(dim) +
           ", T=" + std::to_string(frames) + ")");
  }
  const uint64_t values = static_cast<uint64_t>(dim) * frames;
  if (values > r.remaining() / 4) {
    r.Fail("truncated feature blob: header promises " +
           std::to_string(values) + " values, " +
           std::to_string(r.remaining() / 4) + " present");
  }
  FeatureSequence out(dim, frames);
  for (uint32_t t = 0; t < frames; ++t) {
    for (uint32_t c = 0; c < dim; ++c) out.at(c, t) = r.F32("feature value");
  }
  r.ExpectEnd();
  return out;
}

FeatureSequence ParseCsv(std::string_view contents, const std::string& source) {
  std::vector<float> values;  // frame-major while reading
  size_t dim = 0;
  size_t frames = 0;
  size_t line_no = 0;
  auto lines = internal::Split(contents, '\n');
  // A trailing newline leaves one empty final piece.
  if (!lines.empty() && internal::Trim(lines.back()).empty()) lines.pop_back();
  for (std::string_view raw : lines) {
    ++line_no;
    const std::string_view line = internal::Trim(raw);
    const auto where = source + ":" + std::to_string(line_no);
    if (line.empty()) throw ParseError(where + ": empty row");
    const auto fields = internal::Split(line, ',');
    if (dim == 0) {
      dim = fields.size();
    } else if (fields.size() != dim) {
      throw ParseError(where + ": row has " + std::to_string(fields.size()) +
                       " values, expected " + std::to_string(dim));
    }
    for (size_t c = 0; c < fields.size(); ++c) {
      float v = 0.0f;
      const auto field = internal::Trim(fields[c]);
      if (!internal::ParseFloat(field, v)) {
        throw ParseError(where + ": column " + std::to_string(c + 1) +
                         ": not a number: '" + std::string(field) + "'");
      }
      values.push_back(v);
    }
    ++frames;
  }
  if (frames == 0) throw ParseError(source + ": no frames");
  FeatureSequence out(dim, frames);
  for (size_t t = 0; t < frames; ++t) {
    for (size_t c = 0; c < dim; ++c) out.at(c, t) = values[t * dim + c];
  }
  return out;
}

}  // namespace

FeatureSequence ParseFeatures(std::string_view contents,
                              const std::string& source) {
  if (contents.substr(0, 4) == kFeatureMagic) {
    return ParseBinary(contents, source);
  }
  return ParseCsv(contents, source);
}

std::string FormatFeaturesCsv(const FeatureSequence& features) {
  std::string out;
  for (size_t t = 0; t < features.frames(); ++t) {
    for (size_t c = 0; c < features.channels(); ++c) {
      if (c) out += ',';
      out += internal::FormatFloat(features.at(c, t));
    }
    out += '\n';
  }
  return out;
}

std::string FormatFeaturesBinary(const FeatureSequence& features) {
  if (features.channels() > UINT32_MAX || features.frames() > UINT32_MAX) {
    throw ConfigError("feature sequence too large for the binary format");
  }
  internal::ByteWriter w;
  w.Raw(kFeatureMagic);
  w.U32(kFeatureFormatVersion);
  w.U32(static_cast<uint32_t>(features.channels()));
  w.U32(static_cast<uint32_t>(features.frames()));
  for (size_t t = 0; t < features.frames(); ++t) {
    for (size_t c = 0; c < features.channels(); ++c) w.F32(features.at(c, t));
  }
  const auto& bytes = w.bytes();
  return std::string(bytes.begin(), bytes.end());
}

FeatureSequence ReadFeatures(const std::filesystem::path& path) {
  return ParseFeatures(internal::ReadFile(path), path.string());
}

void WriteFeatures(const FeatureSequence& features,
                   const std::filesystem::path& path, FeatureFormat format) {
  internal::WriteFile(path, format == FeatureFormat::kBinary
                                ? FormatFeaturesBinary(features)
                                : FormatFeaturesCsv(features));
}

FeatureFormat FeatureFormatForPath(const std::filesystem::path& path) {
  return path.extension() == ".tcnf" ? FeatureFormat::kBinary
                                     : FeatureFormat::kCsv;
}

std::vector<int> ParseLabels(std::string_view contents,
                             const std::string& source) {
  std::vector<int> labels;
  auto lines = internal::Split(contents, '\n');
  if (!lines.empty() && internal::Trim(lines.back()).empty()) lines.pop_back();
  size_t line_no = 0;
  for (std::string_view raw : lines) {
    ++line_no;
    const auto token = internal::Trim(raw);
    int64_t v = 0;
    if (!internal::ParseInt64(token, v) || v < 0 || v > INT_MAX) {
      throw ParseError(source + ":" + std::to_string(line_no) +
                       ": not a non-negative integer class id: '" +
                       std::string(token) + "'");
    }
    labels.push_back(static_cast<int>(v));
  }
  return labels;
}

std::string FormatLabels(std::span<const int> labels) {
  std::string out;
  for (int v : labels) {
    out += std::to_string(v);
    out += '\n';
  }
  return out;
}

std::vector<int> ReadLabels(const std::filesystem::path& path) {
  return ParseLabels(internal::ReadFile(path), path.string());
}

void WriteLabels(std::span<const int> labels,
                 const std::filesystem::path& path) {
  internal::WriteFile(path, FormatLabels(labels));
}

}  // namespace tcn::io
