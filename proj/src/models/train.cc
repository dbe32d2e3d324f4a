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

#include "tcn/models/train.h"

#include <numeric>
#include <utility>
#include <string>

#include "tcn/error.h"

namespace tcn::models {

template <typename T>
Model<T> Train(Model<T> model, std::span<const LabeledSequence<T>> data,
               const TrainConfig& config, const EpochCallback& on_epoch) {
  if (data.empty()) throw ConfigError("training dataset is empty");
  if (config.epochs < 1) {
    throw ConfigError("epochs must be >= 1, got " +
                      std::to_string(config.epochs));
  }
  if (!(config.dropout >= 0.0 && config.dropout < 1.0)) {
    throw ConfigError("dropout rate must be in [0, 1)");
  }
  const auto dim = static_cast<size_t>(InputDim(model.spec));
  const int classes = NumClasses(model.spec);
  for (size_t n = 0; n < data.size(); ++n) {
    const auto& seq = data[n];
    if (seq.features.channels() != dim) {
      throw DataError("sequence " + std::to_string(n) + " has " +
                      std::to_string(seq.features.channels()) +
                      " feature channels, model expects " +
                      std::to_string(dim));
    }
    if (seq.labels.size() != seq.features.frames()) {
      throw DataError("sequence " + std::to_string(n) +
                      ": label count does not match frame count");
    }
    for (int label : seq.labels) {
      if (label < 0 || label >= classes) {
        throw DataError("sequence " + std::to_string(n) + ": label " +
                        std::to_string(label) + " outside [0, " +
                        std::to_string(classes) + ")");
      }
    }
  }

  Rng rng(DeriveSeed(config.seed, kTrainStream));
  nn::AdamState<T> adam(config.adam);
  adam.Reset(model.params.TensorSizes());
  Params<T> grads = model.params.ZerosLike();
  std::vector<size_t> order(data.size());
  std::iota(order.begin(), order.end(), size_t{0});

  ForwardOptions options;
  options.training = true;
  options.dropout_rate = config.dropout;
  options.rng = &rng;

  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    if (config.shuffle) rng.Shuffle(order);
    double total = 0.0;
    for (size_t idx : order) {
      const auto& seq = data[idx];
      grads.SetZero();
      ForwardPass<T> pass = Forward(model, seq.features, options);
      nn::LossAndGrad<T> loss = nn::CrossEntropy<T>(pass.probs, seq.labels);
      Backward(model, pass, loss.logit_grad, grads);
      auto params = model.params.Tensors();
      auto grad_views = std::as_const(grads).Tensors();
      adam.Step(params, grad_views);
      total += loss.loss;
    }
    const double mean = total / static_cast<double>(data.size());
    model.metadata.loss_curve.push_back(mean);
    ++model.metadata.epochs;
    if (on_epoch) on_epoch(epoch, mean);
  }
  model.metadata.seed = config.seed;
  return model;
}

template Model<float> Train(Model<float>, std::span<const LabeledSequence<float>>,
                            const TrainConfig&, const EpochCallback&);
template Model<double> Train(Model<double>,
                             std::span<const LabeledSequence<double>>,
                             const TrainConfig&, const EpochCallback&);

}  // namespace tcn::models
