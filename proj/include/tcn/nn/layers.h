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

#ifndef TCN_NN_LAYERS_H_
#define TCN_NN_LAYERS_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "tcn/error.h"

namespace tcn::nn {

// Temporal filters W (out x in x taps, tap index fastest) and bias b.
template <typename T>
struct ConvFilterBank {
  size_t out_channels = 0;
  size_t in_channels = 0;
  size_t taps = 0;
  std::vector<T> weights;
  std::vector<T> bias;

  ConvFilterBank() = default;
  ConvFilterBank(size_t out, size_t in, size_t taps_)
      : out_channels(out),
        in_channels(in),
        taps(taps_),
        weights(out * in * taps_, T(0)),
        bias(out, T(0)) {
    if (out == 0 || in == 0 || taps_ == 0) {
      throw ConfigError("ConvFilterBank dimensions must be positive");
    }
  }

  T& w(size_t o, size_t i, size_t k) {
    return weights[(o * in_channels + i) * taps + k];
  }
  const T& w(size_t o, size_t i, size_t k) const {
    return weights[(o * in_channels + i) * taps + k];
  }

  void Validate() const {
    if (weights.size() != out_channels * in_channels * taps ||
        bias.size() != out_channels) {
      throw ConfigError("ConvFilterBank weight count does not match shape");
    }
  }

  bool operator==(const ConvFilterBank&) const = default;
};

// Per-frame affine map y_t = W x_t + b (W is out x in, row-major).
template <typename T>
struct DenseLayer {
  size_t out_dim = 0;
  size_t in_dim = 0;
  std::vector<T> weights;
  std::vector<T> bias;

  DenseLayer() = default;
  DenseLayer(size_t out, size_t in)
      : out_dim(out), in_dim(in), weights(out * in, T(0)), bias(out, T(0)) {
    if (out == 0 || in == 0) {
      throw ConfigError("DenseLayer dimensions must be positive");
    }
  }

  T& w(size_t o, size_t i) { return weights[o * in_dim + i]; }
  const T& w(size_t o, size_t i) const { return weights[o * in_dim + i]; }

  void Validate() const {
    if (weights.size() != out_dim * in_dim || bias.size() != out_dim) {
      throw ConfigError("DenseLayer weight count does not match shape");
    }
  }

  bool operator==(const DenseLayer&) const = default;
};

}  // namespace tcn::nn

#endif  // TCN_NN_LAYERS_H_
