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

#ifndef TCN_MODELS_SERIALIZE_H_
#define TCN_MODELS_SERIALIZE_H_

// Binary model container. All integers and floats are little-endian.
//
//   "TCNM"                       4-byte magic
//   u32 version                  currently 1
//   u32 n, n bytes               spec record: "key=value\n" lines
//   u32 tensor count
//   per tensor: u32 name length, name bytes, u32 rank, rank x u32 dims
//   per tensor: prod(dims) x f32 values, in manifest order
//   u32 epochs, u64 seed, u32 loss count, loss count x f64 losses
//
// The manifest must match the layout implied by the spec record exactly;
// trailing bytes are rejected. See docs/formats.md.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "tcn/models/model.h"

namespace tcn::models {

inline constexpr uint32_t kModelFormatVersion = 1;

// Spec <-> "key=value\n" record. Throws ParseError on malformed records and
// ConfigError on invalid specs.
std::string FormatSpecRecord(const ModelSpec& spec);
ModelSpec ParseSpecRecord(const std::string& record);

std::vector<uint8_t> SerializeModel(const TrainedModel& model);
// Throws ParseError with the byte offset of the first inconsistency.
TrainedModel DeserializeModel(const std::vector<uint8_t>& bytes);

// Throw IoError on file system failures.
void SaveModel(const TrainedModel& model, const std::filesystem::path& path);
TrainedModel LoadModel(const std::filesystem::path& path);

}  // namespace tcn::models

#endif  // TCN_MODELS_SERIALIZE_H_
