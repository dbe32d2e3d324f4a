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

#ifndef TCN_IO_CONFIG_H_
#define TCN_IO_CONFIG_H_

// Run configuration: a flat "key=value" text file ('#' starts a comment
// line). Unknown keys are rejected.
//
//   key             default        meaning
//   model           (required)     ed_tcn | dilated_tcn
//   L               (required)     ED: encoder layers; dilated: layers/block
//   d               (ED, required) filter duration
//   B               (dilated, req) number of blocks
//   filters         96+32l / 128   ED: comma list, one per layer; dilated: F_w
//   causal          false          true|false|1|0
//   activation      per model      sigmoid|relu|tanh|gated|normalized_relu
//                                  (ED: normalized_relu, dilated: gated)
//   epochs          200
//   learning_rate   0.001
//   beta1           0.9
//   beta2           0.999
//   epsilon         1e-8
//   dropout         0.3            spatial dropout rate in [0, 1)
//   seed            0              initialization, shuffling and dropout
//   shuffle         true
//   tau             10,25,50       IoU thresholds in percent, each in (0,100]
//   background_id   none           class left out of F1 and edit, or "none"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tcn/models/spec.h"
#include "tcn/models/train.h"

namespace tcn::io {

struct RunConfig {
  std::string model;
  std::optional<int> num_layers;       // L
  std::optional<int> filter_duration;  // d
  std::optional<int> num_blocks;       // B
  std::vector<int> filters;            // empty selects the default
  bool causal = false;
  std::optional<nn::Activation> activation;
  models::TrainConfig train;
  std::vector<double> taus = {0.10, 0.25, 0.50};
  std::optional<int> background_id;

  bool operator==(const RunConfig&) const = default;
};

// Applies one key. Throws ConfigError naming the key on unknown keys, bad
// values, or keys that do not apply to the selected model.
void SetConfigValue(RunConfig& config, std::string_view key,
                    std::string_view value);

// Throws ConfigError naming the first missing required key.
void ValidateRunConfig(const RunConfig& config);

// Parses and validates. ParseError for malformed lines, ConfigError for
// unknown keys, bad values, or missing required keys; messages carry the
// source and line.
RunConfig ParseRunConfig(std::string_view text,
                         const std::string& source = "config");
RunConfig ReadRunConfig(const std::filesystem::path& path);
// Every key, defaults included, in the table order above.
std::string FormatRunConfig(const RunConfig& config);

// "10,25,50" -> {0.10, 0.25, 0.50}. Throws ConfigError unless every entry is
// a number in (0, 100].
std::vector<double> ParseTauList(std::string_view list);

// The model spec for data with the given dimensions.
models::ModelSpec SpecFromConfig(const RunConfig& config, int input_dim,
                                 int num_classes);

}  // namespace tcn::io

#endif  // TCN_IO_CONFIG_H_
