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

#include "tcn/models/spec.h"

#include <string>

#include "tcn/error.h"

namespace tcn::models {
namespace {

int64_t Pow2(int exponent) { return int64_t{1} << exponent; }

// Keeps 2^L well inside int64 and the layer counts sane.
constexpr int kMaxLayers = 30;

}  // namespace

int64_t ReceptiveFieldEd(int filter_duration, int num_layers) {
  if (filter_duration < 1 || num_layers < 1 || num_layers > kMaxLayers) {
    throw ConfigError("receptive field needs d >= 1 and 1 <= L <= 30");
  }
  return int64_t{filter_duration} * (Pow2(num_layers) - 1) + 1;
}

int64_t ReceptiveFieldDilated(int num_blocks, int layers_per_block) {
  if (num_blocks < 1 || layers_per_block < 1 ||
      layers_per_block > kMaxLayers) {
    throw ConfigError("receptive field needs B >= 1 and 1 <= L <= 30");
  }
  return int64_t{num_blocks} * Pow2(layers_per_block);
}

int64_t DeclaredReceptiveField(const ModelSpec& spec) {
  if (const auto* ed = std::get_if<EdTcnSpec>(&spec)) {
    return ReceptiveFieldEd(ed->filter_duration, ed->num_layers);
  }
  const auto& dil = std::get<DilatedTcnSpec>(spec);
  return ReceptiveFieldDilated(dil.num_blocks, dil.layers_per_block);
}

std::vector<int> DefaultEdFilters(int num_layers) {
  std::vector<int> filters;
  for (int l = 1; l <= num_layers; ++l) filters.push_back(96 + 32 * l);
  return filters;
}

std::vector<int> EdFilters(const EdTcnSpec& spec) {
  return spec.filters.empty() ? DefaultEdFilters(spec.num_layers)
                              : spec.filters;
}

size_t DilationOf(int layer_in_block) {
  return size_t{1} << layer_in_block;
}

void Validate(const ModelSpec& spec) {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw ConfigError("invalid model spec: " + what);
  };
  if (const auto* ed = std::get_if<EdTcnSpec>(&spec)) {
    require(ed->num_layers >= 1 && ed->num_layers <= kMaxLayers,
            "L must be in [1, 30]");
    require(ed->filter_duration >= 1, "d must be >= 1");
    require(ed->num_classes >= 1, "num_classes must be >= 1");
    require(ed->input_dim >= 1, "input_dim must be >= 1");
    require(ed->filters.empty() ||
                ed->filters.size() == static_cast<size_t>(ed->num_layers),
            "filters must list one count per layer");
    for (int f : ed->filters) require(f >= 1, "filter counts must be >= 1");
    return;
  }
  const auto& dil = std::get<DilatedTcnSpec>(spec);
  require(dil.num_blocks >= 1, "B must be >= 1");
  require(dil.layers_per_block >= 1 && dil.layers_per_block <= kMaxLayers,
          "L must be in [1, 30]");
  require(dil.filters >= 1, "F_w must be >= 1");
  require(dil.num_classes >= 1, "num_classes must be >= 1");
  require(dil.input_dim >= 1, "input_dim must be >= 1");
}

bool IsCausal(const ModelSpec& spec) {
  return std::visit([](const auto& s) { return s.causal; }, spec);
}

int NumClasses(const ModelSpec& spec) {
  return std::visit([](const auto& s) { return s.num_classes; }, spec);
}

int InputDim(const ModelSpec& spec) {
  return std::visit([](const auto& s) { return s.input_dim; }, spec);
}

std::string ArchitectureName(const ModelSpec& spec) {
  return std::holds_alternative<EdTcnSpec>(spec) ? "ed_tcn" : "dilated_tcn";
}

std::vector<LayerInfo> LayerTable(const ModelSpec& spec) {
  Validate(spec);
  std::vector<LayerInfo> table;
  if (const auto* ed = std::get_if<EdTcnSpec>(&spec)) {
    const std::vector<int> filters = EdFilters(*ed);
    const int L = ed->num_layers;
    const auto d = static_cast<size_t>(ed->filter_duration);
    for (int l = 1; l <= L; ++l) {
      size_t in = l == 1 ? ed->input_dim : filters[l - 2];
      size_t out = nn::ActivationInputChannels(ed->activation, filters[l - 1]);
      table.push_back({"encoder." + std::to_string(l), "conv", in, out, d, 1});
    }
    for (int l = L; l >= 1; --l) {
      size_t in = l == L ? filters[L - 1] : filters[l];
      size_t out = nn::ActivationInputChannels(ed->activation, filters[l - 1]);
      table.push_back({"decoder." + std::to_string(l), "conv", in, out, d, 1});
    }
    table.push_back({"output", "dense", static_cast<size_t>(filters[0]),
                     static_cast<size_t>(ed->num_classes), 1, 1});
    return table;
  }
  const auto& dil = std::get<DilatedTcnSpec>(spec);
  const auto width = static_cast<size_t>(dil.filters);
  const size_t taps = dil.causal ? 2 : 3;
  for (int j = 1; j <= dil.num_blocks; ++j) {
    for (int l = 0; l < dil.layers_per_block; ++l) {
      table.push_back({"block." + std::to_string(j) + ".layer." +
                           std::to_string(l + 1) + ".conv",
                       "conv", width,
                       nn::ActivationInputChannels(dil.activation, width),
                       taps, DilationOf(l)});
    }
  }
  table.push_back({"input_projection", "dense",
                   static_cast<size_t>(dil.input_dim), width, 1, 1});
  for (int j = 1; j <= dil.num_blocks; ++j) {
    for (int l = 0; l < dil.layers_per_block; ++l) {
      table.push_back({"block." + std::to_string(j) + ".layer." +
                           std::to_string(l + 1) + ".residual",
                       "dense", width, width, 1, 1});
    }
  }
  table.push_back({"skip_hidden", "dense", width, width, 1, 1});
  table.push_back({"output", "dense", width,
                   static_cast<size_t>(dil.num_classes), 1, 1});
  return table;
}

}  // namespace tcn::models
