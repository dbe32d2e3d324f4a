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

#ifndef TCN_MODELS_SPEC_H_
#define TCN_MODELS_SPEC_H_

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "tcn/nn/ops.h"

namespace tcn::models {

// Encoder-decoder network: L encoder layers (conv, activation, pool) and L
// mirrored decoder layers (upsample, conv, activation), then a per-frame
// softmax head.
struct EdTcnSpec {
  int num_layers = 2;
  int filter_duration = 15;
  nn::Activation activation = nn::Activation::kNormalizedRelu;
  bool causal = false;
  int num_classes = 0;
  int input_dim = 0;
  // Filters per encoder layer; empty selects 96 + 32 * l for l = 1..L.
  std::vector<int> filters;

  bool operator==(const EdTcnSpec&) const = default;
};

// Stack of B blocks of L dilated residual layers (dilation 2^l within a
// block), summed through skip connections into a two-layer head.
struct DilatedTcnSpec {
  int num_blocks = 2;
  int layers_per_block = 3;
  int filters = 128;
  nn::Activation activation = nn::Activation::kGated;
  bool causal = false;
  int num_classes = 0;
  int input_dim = 0;

  bool operator==(const DilatedTcnSpec&) const = default;
};

using ModelSpec = std::variant<EdTcnSpec, DilatedTcnSpec>;

// d * (2^L - 1) + 1
int64_t ReceptiveFieldEd(int filter_duration, int num_layers);
// B * 2^L
int64_t ReceptiveFieldDilated(int num_blocks, int layers_per_block);
int64_t DeclaredReceptiveField(const ModelSpec& spec);

std::vector<int> DefaultEdFilters(int num_layers);
// Filter counts actually used (the schedule or the override).
std::vector<int> EdFilters(const EdTcnSpec& spec);
// Dilation of layer l (0-based) within a block: 2^l.
size_t DilationOf(int layer_in_block);

// Throws ConfigError naming the offending field.
void Validate(const ModelSpec& spec);

bool IsCausal(const ModelSpec& spec);
int NumClasses(const ModelSpec& spec);
int InputDim(const ModelSpec& spec);
std::string ArchitectureName(const ModelSpec& spec);

// One row per parameterized layer, in parameter-store order.
struct LayerInfo {
  std::string name;
  std::string kind;  // "conv" or "dense"
  size_t in_channels = 0;
  size_t out_channels = 0;
  size_t taps = 1;
  size_t dilation = 1;
};

std::vector<LayerInfo> LayerTable(const ModelSpec& spec);

}  // namespace tcn::models

#endif  // TCN_MODELS_SPEC_H_
