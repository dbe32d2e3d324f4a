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

#ifndef TCN_MODELS_TRAIN_H_
#define TCN_MODELS_TRAIN_H_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "tcn/models/model.h"
#include "tcn/nn/adam.h"

namespace tcn::models {

template <typename T>
struct LabeledSequence {
  SeqTensor<T> features;  // F0 x T
  std::vector<int> labels;  // length T
};

struct TrainConfig {
  int epochs = 200;
  nn::AdamOptions adam;
  double dropout = 0.3;
  uint64_t seed = 0;
  bool shuffle = true;

  bool operator==(const TrainConfig&) const = default;
};

inline constexpr uint64_t kTrainStream = 0x7a1;

// Called after each epoch with (epoch index from 1, mean loss).
using EpochCallback = std::function<void(int, double)>;

// One ADAM step per sequence (sequences differ in length), visiting the
// dataset in an order reshuffled every epoch from
// Rng(DeriveSeed(config.seed, kTrainStream)); the same stream drives dropout.
// The per-sequence loss is the mean over its frames and the recorded epoch
// loss is the mean over sequences.
//
// Throws ConfigError for an empty dataset or epochs < 1, DataError for
// mismatched feature dimensions or labels outside [0, C).
template <typename T>
Model<T> Train(Model<T> model, std::span<const LabeledSequence<T>> data,
               const TrainConfig& config, const EpochCallback& on_epoch = {});

}  // namespace tcn::models

#endif  // TCN_MODELS_TRAIN_H_
