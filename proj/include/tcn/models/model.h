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

#ifndef TCN_MODELS_MODEL_H_
#define TCN_MODELS_MODEL_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tcn/models/spec.h"
#include "tcn/nn/layers.h"
#include "tcn/nn/ops.h"
#include "tcn/nn/seq_tensor.h"
#include "tcn/random.h"

namespace tcn::models {

using nn::SeqTensor;

// All learned tensors of a model. `convs` and `dense` follow LayerTable()
// order; the same type doubles as the gradient buffer.
template <typename T>
struct Params {
  std::vector<nn::ConvFilterBank<T>> convs;
  std::vector<nn::DenseLayer<T>> dense;

  // Weight then bias of every conv, then of every dense layer.
  std::vector<std::span<T>> Tensors();
  std::vector<std::span<const T>> Tensors() const;
  std::vector<size_t> TensorSizes() const;
  size_t ParameterCount() const;

  Params ZerosLike() const;
  void SetZero();
  // this += other; shapes must agree.
  void Accumulate(const Params& other);

  bool operator==(const Params&) const = default;
};

// Names aligned with Params::Tensors(), e.g. "encoder.1.weight".
std::vector<std::string> ParameterNames(const ModelSpec& spec);

struct TrainingMetadata {
  int epochs = 0;
  uint64_t seed = 0;
  // Mean training loss of each epoch.
  std::vector<double> loss_curve;

  bool operator==(const TrainingMetadata&) const = default;
};

template <typename T>
struct Model {
  ModelSpec spec;
  Params<T> params;
  TrainingMetadata metadata;
};

// The immutable, serializable model handed to inference and the C API.
using TrainedModel = Model<float>;

// Allocates every layer of `spec`. Weights are uniform in
// +-sqrt(6 / (fan_in + fan_out)) with fan = channels * taps, biases zero,
// drawn in Tensors() order from Rng(DeriveSeed(seed, kInitStream)).
template <typename T>
Model<T> Build(const ModelSpec& spec, uint64_t seed);

inline constexpr uint64_t kInitStream = 0x1417;

template <typename To, typename From>
Model<To> CastModel(const Model<From>& model);

struct ForwardOptions {
  bool training = false;
  double dropout_rate = 0.0;
  // Required when training with dropout_rate > 0.
  Rng* rng = nullptr;
};

// Intermediate values of one layer needed by the backward pass.
template <typename T>
struct LayerCache {
  SeqTensor<T> input;  // conv input (after upsampling for decoder layers)
  SeqTensor<T> pre;    // conv output
  SeqTensor<T> act;    // activation output
  std::vector<T> drop_scale;
  SeqTensor<T> out;  // after dropout
  std::vector<uint32_t> pool_argmax;  // encoder layers only
  size_t upsample_source_frames = 0;  // decoder layers only
};

template <typename T>
struct ForwardCache {
  SeqTensor<T> input;
  std::vector<LayerCache<T>> layers;  // one per conv, in Params order
  SeqTensor<T> head_input;            // input to the output layer
  // Dilated network only.
  SeqTensor<T> skip_sum;
  SeqTensor<T> z0;
  SeqTensor<T> z1_pre;
};

template <typename T>
struct ForwardPass {
  SeqTensor<T> logits;
  SeqTensor<T> probs;  // C x T, every frame sums to one
  ForwardCache<T> cache;
};

// Throws DataError when input.channels() != input_dim.
template <typename T>
ForwardPass<T> Forward(const Model<T>& model, const SeqTensor<T>& input,
                       const ForwardOptions& options = {});

// Accumulates d loss / d params into `grads` (shaped like model.params) for
// the given d loss / d logits; returns d loss / d input.
template <typename T>
SeqTensor<T> Backward(const Model<T>& model, const ForwardPass<T>& pass,
                      const SeqTensor<T>& logit_grad, Params<T>& grads);

// Inference-mode class probabilities. Throw ConfigError on an architecture
// mismatch.
template <typename T>
SeqTensor<T> ForwardEd(const Model<T>& model, const SeqTensor<T>& input);
template <typename T>
SeqTensor<T> ForwardDilated(const Model<T>& model, const SeqTensor<T>& input);

// The single-tap F0 -> F_w map that feeds the first dilated block.
template <typename T>
SeqTensor<T> InputProjection(const Model<T>& model, const SeqTensor<T>& input);

// Per-frame argmax; ties go to the lowest class index.
template <typename T>
std::vector<int> PredictLabels(const SeqTensor<T>& probs);

template <typename T>
std::vector<int> PredictLabels(const Model<T>& model,
                               const SeqTensor<T>& input);

}  // namespace tcn::models

#endif  // TCN_MODELS_MODEL_H_
