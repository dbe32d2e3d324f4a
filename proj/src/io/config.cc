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

#include "tcn/io/config.h"

#include <charconv>
#include <climits>
#include <sstream>

#include "internal/text.h"
#include "tcn/error.h"

namespace tcn::io {
namespace {

[[noreturn]] void Bad(std::string_view key, std::string_view value,
                      const std::string& expected) {
  throw ConfigError("config key '" + std::string(key) + "': bad value '" +
                    std::string(value) + "' (expected " + expected + ")");
}

int PositiveInt(std::string_view key, std::string_view value) {
  int64_t v = 0;
  if (!internal::ParseInt64(value, v) || v < 1 || v > INT32_MAX) {
    Bad(key, value, "a positive integer");
  }
  return static_cast<int>(v);
}

double Real(std::string_view key, std::string_view value) {
  double v = 0.0;
  if (!internal::ParseDouble(value, v)) Bad(key, value, "a number");
  return v;
}

bool Boolean(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  Bad(key, value, "true|false");
}

std::string JoinInts(const std::vector<int>& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

}  // namespace

std::vector<double> ParseTauList(std::string_view list) {
  std::vector<double> taus;
  for (auto part : internal::Split(list, ',')) {
    part = internal::Trim(part);
    double percent = 0.0;
    if (!internal::ParseDouble(part, percent) || !(percent > 0.0) ||
        percent > 100.0) {
      Bad("tau", list, "comma-separated percentages in (0, 100]");
    }
    taus.push_back(percent / 100.0);
  }
  return taus;
}

void SetConfigValue(RunConfig& config, std::string_view key,
                    std::string_view value) {
  auto& train = config.train;
  if (key == "model") {
    if (value != "ed_tcn" && value != "dilated_tcn") {
      Bad(key, value, "ed_tcn|dilated_tcn");
    }
    config.model = std::string(value);
  } else if (key == "L") {
    config.num_layers = PositiveInt(key, value);
  } else if (key == "d") {
    config.filter_duration = PositiveInt(key, value);
  } else if (key == "B") {
    config.num_blocks = PositiveInt(key, value);
  } else if (key == "filters") {
    config.filters.clear();
    for (auto part : internal::Split(value, ',')) {
      config.filters.push_back(PositiveInt(key, internal::Trim(part)));
    }
  } else if (key == "causal") {
    config.causal = Boolean(key, value);
  } else if (key == "activation") {
    try {
      config.activation = nn::ParseActivation(value);
    } catch (const ConfigError&) {
      Bad(key, value, "sigmoid|relu|tanh|gated|normalized_relu");
    }
  } else if (key == "epochs") {
    train.epochs = PositiveInt(key, value);
  } else if (key == "learning_rate") {
    train.adam.learning_rate = Real(key, value);
    if (!(train.adam.learning_rate > 0.0)) Bad(key, value, "a number > 0");
  } else if (key == "beta1" || key == "beta2") {
    const double b = Real(key, value);
    if (!(b >= 0.0 && b < 1.0)) Bad(key, value, "a number in [0, 1)");
    (key == "beta1" ? train.adam.beta1 : train.adam.beta2) = b;
  } else if (key == "epsilon") {
    train.adam.epsilon = Real(key, value);
    if (!(train.adam.epsilon > 0.0)) Bad(key, value, "a number > 0");
  } else if (key == "dropout") {
    train.dropout = Real(key, value);
    if (!(train.dropout >= 0.0 && train.dropout < 1.0)) {
      Bad(key, value, "a rate in [0, 1)");
    }
  } else if (key == "seed") {
    uint64_t seed = 0;
    const auto [ptr, ec] =
        std::from_chars(value.data(), value.data() + value.size(), seed);
    if (value.empty() || ec != std::errc() ||
        ptr != value.data() + value.size()) {
      Bad(key, value, "an unsigned 64-bit integer");
    }
    train.seed = seed;
  } else if (key == "shuffle") {
    train.shuffle = Boolean(key, value);
  } else if (key == "tau") {
    config.taus = ParseTauList(value);
  } else if (key == "background_id") {
    if (value == "none") {
      config.background_id.reset();
    } else {
      int64_t v = 0;
      if (!internal::ParseInt64(value, v) || v < 0 || v > INT32_MAX) {
        Bad(key, value, "a class id or none");
      }
      config.background_id = static_cast<int>(v);
    }
  } else {
    throw ConfigError("unknown config key '" + std::string(key) + "'");
  }
}

void ValidateRunConfig(const RunConfig& config) {
  if (config.model.empty()) {
    throw ConfigError("missing required config key 'model'");
  }
  if (!config.num_layers) throw ConfigError("missing required config key 'L'");
  const bool ed = config.model == "ed_tcn";
  if (ed) {
    if (!config.filter_duration) {
      throw ConfigError("missing required config key 'd' for model=ed_tcn");
    }
    if (config.num_blocks) {
      throw ConfigError("config key 'B' does not apply to model=ed_tcn");
    }
    if (!config.filters.empty() &&
        static_cast<int>(config.filters.size()) != *config.num_layers) {
      throw ConfigError("config key 'filters': " +
                        std::to_string(config.filters.size()) +
                        " entries for L=" + std::to_string(*config.num_layers));
    }
  } else {
    if (!config.num_blocks) {
      throw ConfigError(
          "missing required config key 'B' for model=dilated_tcn");
    }
    if (config.filter_duration) {
      throw ConfigError("config key 'd' does not apply to model=dilated_tcn");
    }
    if (config.filters.size() > 1) {
      throw ConfigError(
          "config key 'filters': model=dilated_tcn takes a single width");
    }
  }
}

RunConfig ParseRunConfig(std::string_view text, const std::string& source) {
  RunConfig config;
  for (const auto& kv : internal::ParseKeyValueLines(text, source)) {
    try {
      SetConfigValue(config, kv.key, kv.value);
    } catch (const ConfigError& e) {
      throw ConfigError(source + ":" + std::to_string(kv.line) + ": " +
                        e.what());
    }
  }
  try {
    ValidateRunConfig(config);
  } catch (const ConfigError& e) {
    throw ConfigError(source + ": " + e.what());
  }
  return config;
}

RunConfig ReadRunConfig(const std::filesystem::path& path) {
  return ParseRunConfig(internal::ReadFile(path), path.string());
}

std::string FormatRunConfig(const RunConfig& config) {
  std::ostringstream out;
  const bool ed = config.model == "ed_tcn";
  out << "model=" << config.model << '\n';
  if (config.num_layers) out << "L=" << *config.num_layers << '\n';
  if (config.filter_duration) out << "d=" << *config.filter_duration << '\n';
  if (config.num_blocks) out << "B=" << *config.num_blocks << '\n';
  if (!config.filters.empty()) {
    out << "filters=" << JoinInts(config.filters) << '\n';
  }
  out << "causal=" << (config.causal ? "true" : "false") << '\n';
  const nn::Activation act = config.activation.value_or(
      ed ? nn::Activation::kNormalizedRelu : nn::Activation::kGated);
  out << "activation=" << nn::ActivationName(act) << '\n';
  const auto& t = config.train;
  out << "epochs=" << t.epochs << '\n'
      << "learning_rate=" << internal::FormatDouble(t.adam.learning_rate)
      << '\n'
      << "beta1=" << internal::FormatDouble(t.adam.beta1) << '\n'
      << "beta2=" << internal::FormatDouble(t.adam.beta2) << '\n'
      << "epsilon=" << internal::FormatDouble(t.adam.epsilon) << '\n'
      << "dropout=" << internal::FormatDouble(t.dropout) << '\n'
      << "seed=" << t.seed << '\n'
      << "shuffle=" << (t.shuffle ? "true" : "false") << '\n';
  out << "tau=";
  for (size_t i = 0; i < config.taus.size(); ++i) {
    if (i) out << ',';
    out << internal::FormatDouble(config.taus[i] * 100.0);
  }
  out << '\n';
  out << "background_id="
      << (config.background_id ? std::to_string(*config.background_id)
                               : std::string("none"))
      << '\n';
  return out.str();
}

models::ModelSpec SpecFromConfig(const RunConfig& config, int input_dim,
                                 int num_classes) {
  ValidateRunConfig(config);
  models::ModelSpec spec;
  if (config.model == "ed_tcn") {
    models::EdTcnSpec s;
    s.num_layers = *config.num_layers;
    s.filter_duration = *config.filter_duration;
    s.filters = config.filters;
    s.causal = config.causal;
    if (config.activation) s.activation = *config.activation;
    s.input_dim = input_dim;
    s.num_classes = num_classes;
    spec = s;
  } else {
    models::DilatedTcnSpec s;
    s.num_blocks = *config.num_blocks;
    s.layers_per_block = *config.num_layers;
    if (!config.filters.empty()) s.filters = config.filters[0];
    s.causal = config.causal;
    if (config.activation) s.activation = *config.activation;
    s.input_dim = input_dim;
    s.num_classes = num_classes;
    spec = s;
  }
  models::Validate(spec);
  return spec;
}

}  // namespace tcn::io
