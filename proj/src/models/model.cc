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

#include "tcn/models/model.h"

#include <cmath>
#include <string>

#include "tcn/error.h"

namespace tcn::models {
namespace {

using nn::ConvMode;
using nn::PoolAlignment;

template <typename T>
void AddInPlace(std::vector<T>& dst, const std::vector<T>& src) {
  for (size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
}

template <typename T>
void AddInPlace(SeqTensor<T>& dst, const SeqTensor<T>& src) {
  auto d = dst.data();
  auto s = src.data();
  for (size_t i = 0; i < d.size(); ++i) d[i] += s[i];
}

template <typename T>
SeqTensor<T> Relu(const SeqTensor<T>& x) {
  return nn::ActivationForward(x, nn::Activation::kRelu);
}

// Gradient through relu given its input.
template <typename T>
SeqTensor<T> ReluBackward(const SeqTensor<T>& x, const SeqTensor<T>& upstream) {
  SeqTensor<T> grad = upstream;
  auto g = grad.data();
  auto in = x.data();
  for (size_t i = 0; i < g.size(); ++i) {
    if (!(in[i] > T(0))) g[i] = T(0);
  }
  return grad;
}

template <typename T>
void CheckInput(const Model<T>& model, const SeqTensor<T>& input) {
  const int dim = InputDim(model.spec);
  if (input.empty() || input.channels() != static_cast<size_t>(dim)) {
    throw DataError("model expects " + std::to_string(dim) +
                    "-dimensional features, got " +
                    std::to_string(input.channels()));
  }
}

template <typename T>
SeqTensor<T> Dropout(const SeqTensor<T>& x, const ForwardOptions& options,
                     std::vector<T>* scale) {
  if (options.training && options.dropout_rate > 0.0) {
    if (options.rng == nullptr) {
      throw ConfigError("training with dropout needs an Rng");
    }
    return nn::SpatialDropout(x, options.dropout_rate, *options.rng, true,
                              scale);
  }
  if (!(options.dropout_rate >= 0.0 && options.dropout_rate < 1.0)) {
    throw ConfigError("dropout rate must be in [0, 1)");
  }
  scale->assign(x.channels(), T(1));
  return x;
}

template <typename T>
ForwardPass<T> ForwardEdImpl(const Model<T>& model, const EdTcnSpec& spec,
                             const SeqTensor<T>& input,
                             const ForwardOptions& options) {
  const int L = spec.num_layers;
  const ConvMode mode = spec.causal ? ConvMode::kCausal : ConvMode::kAcausal;
  const PoolAlignment alignment =
      spec.causal ? PoolAlignment::kCausal : PoolAlignment::kAligned;
  ForwardPass<T> pass;
  pass.cache.input = input;
  pass.cache.layers.resize(2 * L);

  SeqTensor<T> x = input;
  for (int l = 0; l < L; ++l) {
    LayerCache<T>& lc = pass.cache.layers[l];
    lc.input = std::move(x);
    lc.pre = nn::TemporalConvForward(lc.input, model.params.convs[l], mode);
    lc.act = nn::ActivationForward(lc.pre, spec.activation);
    lc.out = Dropout(lc.act, options, &lc.drop_scale);
    nn::PoolResult<T> pooled = nn::MaxPoolTime(lc.out, alignment);
    lc.pool_argmax = std::move(pooled.argmax);
    x = std::move(pooled.output);
  }
  // Decoder layer k mirrors encoder layer L-1-k and restores its frame count.
  for (int k = 0; k < L; ++k) {
    LayerCache<T>& lc = pass.cache.layers[L + k];
    const size_t target = pass.cache.layers[L - 1 - k].input.frames();
    lc.upsample_source_frames = x.frames();
    lc.input = nn::UpsampleTime(x, target);
    lc.pre = nn::TemporalConvForward(lc.input, model.params.convs[L + k], mode);
    lc.act = nn::ActivationForward(lc.pre, spec.activation);
    lc.out = Dropout(lc.act, options, &lc.drop_scale);
    x = lc.out;
  }
  pass.cache.head_input = std::move(x);
  pass.logits = nn::DenseForward(pass.cache.head_input, model.params.dense[0]);
  pass.probs = nn::SoftmaxFrames(pass.logits);
  return pass;
}

template <typename T>
SeqTensor<T> BackwardEdImpl(const Model<T>& model, const EdTcnSpec& spec,
                            const ForwardPass<T>& pass,
                            const SeqTensor<T>& logit_grad, Params<T>& grads) {
  const int L = spec.num_layers;
  const ConvMode mode = spec.causal ? ConvMode::kCausal : ConvMode::kAcausal;
  auto head = nn::DenseBackward(pass.cache.head_input, model.params.dense[0],
                                logit_grad);
  AddInPlace(grads.dense[0].weights, head.weights);
  AddInPlace(grads.dense[0].bias, head.bias);
  SeqTensor<T> g = std::move(head.input);

  for (int k = L - 1; k >= 0; --k) {
    const LayerCache<T>& lc = pass.cache.layers[L + k];
    g = nn::SpatialDropoutBackward<T>(g, lc.drop_scale);
    g = nn::ActivationBackward(lc.pre, lc.act, g, spec.activation);
    auto conv = nn::TemporalConvBackward(lc.input, model.params.convs[L + k],
                                         g, mode);
    AddInPlace(grads.convs[L + k].weights, conv.weights);
    AddInPlace(grads.convs[L + k].bias, conv.bias);
    g = nn::UpsampleTimeBackward(conv.input, lc.upsample_source_frames);
  }
  for (int l = L - 1; l >= 0; --l) {
    const LayerCache<T>& lc = pass.cache.layers[l];
    g = nn::MaxPoolTimeBackward<T>(g, lc.pool_argmax, lc.out.frames());
    g = nn::SpatialDropoutBackward<T>(g, lc.drop_scale);
    g = nn::ActivationBackward(lc.pre, lc.act, g, spec.activation);
    auto conv = nn::TemporalConvBackward(lc.input, model.params.convs[l], g,
                                         mode);
    AddInPlace(grads.convs[l].weights, conv.weights);
    AddInPlace(grads.convs[l].bias, conv.bias);
    g = std::move(conv.input);
  }
  return g;
}

// Dense layer order: [projection, residual(j, l)..., skip_hidden, output].
template <typename T>
ForwardPass<T> ForwardDilatedImpl(const Model<T>& model,
                                  const DilatedTcnSpec& spec,
                                  const SeqTensor<T>& input,
                                  const ForwardOptions& options) {
  const int B = spec.num_blocks;
  const int L = spec.layers_per_block;
  const ConvMode mode = spec.causal ? ConvMode::kCausal : ConvMode::kAcausal;
  const auto& dense = model.params.dense;
  ForwardPass<T> pass;
  pass.cache.input = input;
  pass.cache.layers.resize(B * L);

  SeqTensor<T> s = nn::DenseForward(input, dense[0]);
  pass.cache.skip_sum = SeqTensor<T>(s.channels(), s.frames());
  for (int j = 0; j < B; ++j) {
    for (int l = 0; l < L; ++l) {
      const int idx = j * L + l;
      LayerCache<T>& lc = pass.cache.layers[idx];
      lc.input = std::move(s);
      lc.pre = nn::TemporalConvForward(lc.input, model.params.convs[idx], mode,
                                       DilationOf(l));
      lc.act = nn::ActivationForward(lc.pre, spec.activation);
      lc.out = Dropout(lc.act, options, &lc.drop_scale);
      s = nn::DenseForward(lc.out, dense[1 + idx]);
      AddInPlace(s, lc.input);
    }
    AddInPlace(pass.cache.skip_sum, s);
  }
  pass.cache.z0 = Relu(pass.cache.skip_sum);
  pass.cache.z1_pre = nn::DenseForward(pass.cache.z0, dense[1 + B * L]);
  pass.cache.head_input = Relu(pass.cache.z1_pre);
  pass.logits = nn::DenseForward(pass.cache.head_input, dense[2 + B * L]);
  pass.probs = nn::SoftmaxFrames(pass.logits);
  return pass;
}

template <typename T>
SeqTensor<T> BackwardDilatedImpl(const Model<T>& model,
                                 const DilatedTcnSpec& spec,
                                 const ForwardPass<T>& pass,
                                 const SeqTensor<T>& logit_grad,
                                 Params<T>& grads) {
  const int B = spec.num_blocks;
  const int L = spec.layers_per_block;
  const ConvMode mode = spec.causal ? ConvMode::kCausal : ConvMode::kAcausal;
  const auto& dense = model.params.dense;
  auto accumulate_dense = [&grads](size_t i, const nn::DenseGrads<T>& dg) {
    AddInPlace(grads.dense[i].weights, dg.weights);
    AddInPlace(grads.dense[i].bias, dg.bias);
  };

  auto out = nn::DenseBackward(pass.cache.head_input, dense[2 + B * L],
                               logit_grad);
  accumulate_dense(2 + B * L, out);
  SeqTensor<T> g = ReluBackward(pass.cache.z1_pre, out.input);
  auto hidden = nn::DenseBackward(pass.cache.z0, dense[1 + B * L], g);
  accumulate_dense(1 + B * L, hidden);
  const SeqTensor<T> skip_grad = ReluBackward(pass.cache.skip_sum, hidden.input);

  // Gradient w.r.t. the running residual stream s.
  SeqTensor<T> gs(skip_grad.channels(), skip_grad.frames());
  for (int j = B - 1; j >= 0; --j) {
    AddInPlace(gs, skip_grad);
    for (int l = L - 1; l >= 0; --l) {
      const int idx = j * L + l;
      const LayerCache<T>& lc = pass.cache.layers[idx];
      auto res = nn::DenseBackward(lc.out, dense[1 + idx], gs);
      accumulate_dense(1 + idx, res);
      SeqTensor<T> ga = nn::SpatialDropoutBackward<T>(res.input, lc.drop_scale);
      ga = nn::ActivationBackward(lc.pre, lc.act, ga, spec.activation);
      auto conv = nn::TemporalConvBackward(lc.input, model.params.convs[idx],
                                           ga, mode, DilationOf(l));
      AddInPlace(grads.convs[idx].weights, conv.weights);
      AddInPlace(grads.convs[idx].bias, conv.bias);
      AddInPlace(gs, conv.input);
    }
  }
  auto proj = nn::DenseBackward(pass.cache.input, dense[0], gs);
  accumulate_dense(0, proj);
  return std::move(proj.input);
}

}  // namespace

template <typename T>
std::vector<std::span<T>> Params<T>::Tensors() {
  std::vector<std::span<T>> out;
  for (auto& c : convs) {
    out.emplace_back(c.weights);
    out.emplace_back(c.bias);
  }
  for (auto& d : dense) {
    out.emplace_back(d.weights);
    out.emplace_back(d.bias);
  }
  return out;
}

template <typename T>
std::vector<std::span<const T>> Params<T>::Tensors() const {
  std::vector<std::span<const T>> out;
  for (const auto& c : convs) {
    out.emplace_back(c.weights);
    out.emplace_back(c.bias);
  }
  for (const auto& d : dense) {
    out.emplace_back(d.weights);
    out.emplace_back(d.bias);
  }
  return out;
}

template <typename T>
std::vector<size_t> Params<T>::TensorSizes() const {
  std::vector<size_t> sizes;
  for (auto t : Tensors()) sizes.push_back(t.size());
  return sizes;
}

template <typename T>
size_t Params<T>::ParameterCount() const {
  size_t n = 0;
  for (auto t : Tensors()) n += t.size();
  return n;
}

template <typename T>
Params<T> Params<T>::ZerosLike() const {
  Params<T> zeros = *this;
  zeros.SetZero();
  return zeros;
}

template <typename T>
void Params<T>::SetZero() {
  for (auto t : Tensors()) std::fill(t.begin(), t.end(), T(0));
}

template <typename T>
void Params<T>::Accumulate(const Params& other) {
  auto dst = Tensors();
  auto src = other.Tensors();
  if (dst.size() != src.size()) {
    throw ConfigError("gradient buffer layout does not match parameters");
  }
  for (size_t n = 0; n < dst.size(); ++n) {
    if (dst[n].size() != src[n].size()) {
      throw ConfigError("gradient buffer shape does not match parameters");
    }
    for (size_t i = 0; i < dst[n].size(); ++i) dst[n][i] += src[n][i];
  }
}

std::vector<std::string> ParameterNames(const ModelSpec& spec) {
  std::vector<std::string> names;
  const auto table = LayerTable(spec);
  for (const auto& layer : table) {
    if (layer.kind != "conv") continue;
    names.push_back(layer.name + ".weight");
    names.push_back(layer.name + ".bias");
  }
  for (const auto& layer : table) {
    if (layer.kind != "dense") continue;
    names.push_back(layer.name + ".weight");
    names.push_back(layer.name + ".bias");
  }
  return names;
}

template <typename T>
Model<T> Build(const ModelSpec& spec, uint64_t seed) {
  Validate(spec);
  Model<T> model{spec, {}, {}};
  model.metadata.seed = seed;
  const auto table = LayerTable(spec);
  for (const auto& layer : table) {
    if (layer.kind == "conv") {
      model.params.convs.emplace_back(layer.out_channels, layer.in_channels,
                                      layer.taps);
    } else {
      model.params.dense.emplace_back(layer.out_channels, layer.in_channels);
    }
  }
  // Glorot limits per tensor, following Tensors() order (weights only).
  std::vector<double> limits;
  for (const auto& c : model.params.convs) {
    limits.push_back(std::sqrt(
        6.0 / static_cast<double>((c.in_channels + c.out_channels) * c.taps)));
  }
  for (const auto& d : model.params.dense) {
    limits.push_back(
        std::sqrt(6.0 / static_cast<double>(d.in_dim + d.out_dim)));
  }
  Rng rng(DeriveSeed(seed, kInitStream));
  auto tensors = model.params.Tensors();
  for (size_t n = 0; n < limits.size(); ++n) {
    const double a = limits[n];
    for (T& w : tensors[2 * n]) w = static_cast<T>(rng.Uniform(-a, a));
  }
  return model;
}

template <typename To, typename From>
Model<To> CastModel(const Model<From>& model) {
  Model<To> out;
  out.spec = model.spec;
  out.metadata = model.metadata;
  for (const auto& c : model.params.convs) {
    nn::ConvFilterBank<To> bank(c.out_channels, c.in_channels, c.taps);
    bank.weights.assign(c.weights.begin(), c.weights.end());
    bank.bias.assign(c.bias.begin(), c.bias.end());
    out.params.convs.push_back(std::move(bank));
  }
  for (const auto& d : model.params.dense) {
    nn::DenseLayer<To> layer(d.out_dim, d.in_dim);
    layer.weights.assign(d.weights.begin(), d.weights.end());
    layer.bias.assign(d.bias.begin(), d.bias.end());
    out.params.dense.push_back(std::move(layer));
  }
  return out;
}

template <typename T>
ForwardPass<T> Forward(const Model<T>& model, const SeqTensor<T>& input,
                       const ForwardOptions& options) {
  CheckInput(model, input);
  if (const auto* ed = std::get_if<EdTcnSpec>(&model.spec)) {
    return ForwardEdImpl(model, *ed, input, options);
  }
  return ForwardDilatedImpl(model, std::get<DilatedTcnSpec>(model.spec), input,
                            options);
}

template <typename T>
SeqTensor<T> Backward(const Model<T>& model, const ForwardPass<T>& pass,
                      const SeqTensor<T>& logit_grad, Params<T>& grads) {
  if (!logit_grad.SameShape(pass.logits)) {
    throw ConfigError("backward: logit gradient shape does not match output");
  }
  if (grads.convs.size() != model.params.convs.size() ||
      grads.dense.size() != model.params.dense.size()) {
    throw ConfigError("backward: gradient buffer layout does not match model");
  }
  if (const auto* ed = std::get_if<EdTcnSpec>(&model.spec)) {
    return BackwardEdImpl(model, *ed, pass, logit_grad, grads);
  }
  return BackwardDilatedImpl(model, std::get<DilatedTcnSpec>(model.spec), pass,
                             logit_grad, grads);
}

template <typename T>
SeqTensor<T> ForwardEd(const Model<T>& model, const SeqTensor<T>& input) {
  if (!std::holds_alternative<EdTcnSpec>(model.spec)) {
    throw ConfigError("ForwardEd called on a dilated model");
  }
  return Forward(model, input).probs;
}

template <typename T>
SeqTensor<T> ForwardDilated(const Model<T>& model, const SeqTensor<T>& input) {
  if (!std::holds_alternative<DilatedTcnSpec>(model.spec)) {
    throw ConfigError("ForwardDilated called on an encoder-decoder model");
  }
  return Forward(model, input).probs;
}

template <typename T>
SeqTensor<T> InputProjection(const Model<T>& model, const SeqTensor<T>& input) {
  if (!std::holds_alternative<DilatedTcnSpec>(model.spec)) {
    throw ConfigError("input projection exists only in dilated models");
  }
  CheckInput(model, input);
  return nn::DenseForward(input, model.params.dense[0]);
}

template <typename T>
std::vector<int> PredictLabels(const SeqTensor<T>& probs) {
  std::vector<int> labels(probs.frames(), 0);
  for (size_t t = 0; t < probs.frames(); ++t) {
    size_t best = 0;
    for (size_t c = 1; c < probs.channels(); ++c) {
      if (probs.at(c, t) > probs.at(best, t)) best = c;
    }
    labels[t] = static_cast<int>(best);
  }
  return labels;
}

template <typename T>
std::vector<int> PredictLabels(const Model<T>& model,
                               const SeqTensor<T>& input) {
  return PredictLabels(Forward(model, input).probs);
}

#define TCN_INSTANTIATE_MODEL(T)                                              \
  template struct Params<T>;                                                  \
  template Model<T> Build<T>(const ModelSpec&, uint64_t);                     \
  template ForwardPass<T> Forward(const Model<T>&, const SeqTensor<T>&,       \
                                  const ForwardOptions&);                     \
  template SeqTensor<T> Backward(const Model<T>&, const ForwardPass<T>&,      \
                                 const SeqTensor<T>&, Params<T>&);            \
  template SeqTensor<T> ForwardEd(const Model<T>&, const SeqTensor<T>&);      \
  template SeqTensor<T> ForwardDilated(const Model<T>&, const SeqTensor<T>&); \
  template SeqTensor<T> InputProjection(const Model<T>&, const SeqTensor<T>&);\
  template std::vector<int> PredictLabels(const SeqTensor<T>&);               \
  template std::vector<int> PredictLabels(const Model<T>&,                    \
                                          const SeqTensor<T>&);

TCN_INSTANTIATE_MODEL(float)
TCN_INSTANTIATE_MODEL(double)

#undef TCN_INSTANTIATE_MODEL

template Model<float> CastModel<float, double>(const Model<double>&);
template Model<double> CastModel<double, float>(const Model<float>&);
template Model<float> CastModel<float, float>(const Model<float>&);
template Model<double> CastModel<double, double>(const Model<double>&);

}  // namespace tcn::models
