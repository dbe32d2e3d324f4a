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

#include "tcn/nn/ops.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace tcn::nn {
namespace {

std::string ShapeString(size_t channels, size_t frames) {
  return std::to_string(channels) + "x" + std::to_string(frames);
}

// y[t] += w * x[t + offset] over the frames where t + offset is in range.
template <typename T>
inline void ShiftedAxpy(T w, const T* x, T* y, std::ptrdiff_t offset,
                        std::ptrdiff_t frames) {
  std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, -offset);
  std::ptrdiff_t hi = std::min<std::ptrdiff_t>(frames, frames - offset);
  const T* xs = x + offset;
  for (std::ptrdiff_t t = lo; t < hi; ++t) y[t] += w * xs[t];
}

// sum_t a[t] * b[t + offset] over the frames where t + offset is in range.
template <typename T>
inline T ShiftedDot(const T* a, const T* b, std::ptrdiff_t offset,
                    std::ptrdiff_t frames) {
  std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, -offset);
  std::ptrdiff_t hi = std::min<std::ptrdiff_t>(frames, frames - offset);
  const T* bs = b + offset;
  T acc = T(0);
  for (std::ptrdiff_t t = lo; t < hi; ++t) acc += a[t] * bs[t];
  return acc;
}

template <typename T>
inline T Sigmoid(T x) {
  if (x >= T(0)) return T(1) / (T(1) + std::exp(-x));
  T e = std::exp(x);
  return e / (T(1) + e);
}

}  // namespace

std::ptrdiff_t TapOffset(ConvMode mode, size_t taps, size_t k,
                         size_t dilation) {
  auto kk = static_cast<std::ptrdiff_t>(k);
  auto d = static_cast<std::ptrdiff_t>(taps);
  auto s = static_cast<std::ptrdiff_t>(dilation);
  if (mode == ConvMode::kCausal) return (kk - (d - 1)) * s;
  return (kk - d / 2) * s;
}

template <typename T>
SeqTensor<T> TemporalConvForward(const SeqTensor<T>& input,
                                 const ConvFilterBank<T>& filters,
                                 ConvMode mode, size_t dilation) {
  filters.Validate();
  if (input.channels() != filters.in_channels) {
    throw ConfigError("temporal conv expects " +
                      std::to_string(filters.in_channels) +
                      " input channels, got " +
                      std::to_string(input.channels()));
  }
  if (dilation == 0) throw ConfigError("dilation must be >= 1");
  const auto frames = static_cast<std::ptrdiff_t>(input.frames());
  SeqTensor<T> out(filters.out_channels, input.frames());
  for (size_t o = 0; o < filters.out_channels; ++o) {
    T* y = out.channel(o).data();
    std::fill(y, y + frames, filters.bias[o]);
    for (size_t i = 0; i < filters.in_channels; ++i) {
      const T* x = input.channel(i).data();
      for (size_t k = 0; k < filters.taps; ++k) {
        ShiftedAxpy(filters.w(o, i, k), x, y,
                    TapOffset(mode, filters.taps, k, dilation), frames);
      }
    }
  }
  return out;
}

template <typename T>
ConvGrads<T> TemporalConvBackward(const SeqTensor<T>& input,
                                  const ConvFilterBank<T>& filters,
                                  const SeqTensor<T>& upstream, ConvMode mode,
                                  size_t dilation) {
  filters.Validate();
  if (input.channels() != filters.in_channels ||
      upstream.channels() != filters.out_channels ||
      upstream.frames() != input.frames()) {
    throw ConfigError("temporal conv backward: input " +
                      ShapeString(input.channels(), input.frames()) +
                      ", upstream " +
                      ShapeString(upstream.channels(), upstream.frames()) +
                      " inconsistent with filters");
  }
  const auto frames = static_cast<std::ptrdiff_t>(input.frames());
  ConvGrads<T> grads{SeqTensor<T>(input.channels(), input.frames()),
                     std::vector<T>(filters.weights.size(), T(0)),
                     std::vector<T>(filters.out_channels, T(0))};
  for (size_t o = 0; o < filters.out_channels; ++o) {
    const T* dy = upstream.channel(o).data();
    T bias_grad = T(0);
    for (std::ptrdiff_t t = 0; t < frames; ++t) bias_grad += dy[t];
    grads.bias[o] = bias_grad;
    for (size_t i = 0; i < filters.in_channels; ++i) {
      const T* x = input.channel(i).data();
      T* dx = grads.input.channel(i).data();
      for (size_t k = 0; k < filters.taps; ++k) {
        std::ptrdiff_t off = TapOffset(mode, filters.taps, k, dilation);
        grads.weights[(o * filters.in_channels + i) * filters.taps + k] =
            ShiftedDot(dy, x, off, frames);
        // dx[t + off] += w * dy[t]  <=>  dx[u] += w * dy[u - off]
        ShiftedAxpy(filters.w(o, i, k), dy, dx, -off, frames);
      }
    }
  }
  return grads;
}

template <typename T>
SeqTensor<T> DenseForward(const SeqTensor<T>& input,
                          const DenseLayer<T>& layer) {
  layer.Validate();
  if (input.channels() != layer.in_dim) {
    throw ConfigError("dense layer expects " + std::to_string(layer.in_dim) +
                      " input channels, got " +
                      std::to_string(input.channels()));
  }
  const auto frames = static_cast<std::ptrdiff_t>(input.frames());
  SeqTensor<T> out(layer.out_dim, input.frames());
  for (size_t o = 0; o < layer.out_dim; ++o) {
    T* y = out.channel(o).data();
    std::fill(y, y + frames, layer.bias[o]);
    for (size_t i = 0; i < layer.in_dim; ++i) {
      ShiftedAxpy(layer.w(o, i), input.channel(i).data(), y, 0, frames);
    }
  }
  return out;
}

template <typename T>
DenseGrads<T> DenseBackward(const SeqTensor<T>& input,
                            const DenseLayer<T>& layer,
                            const SeqTensor<T>& upstream) {
  layer.Validate();
  if (input.channels() != layer.in_dim ||
      upstream.channels() != layer.out_dim ||
      upstream.frames() != input.frames()) {
    throw ConfigError("dense backward: shapes inconsistent with layer");
  }
  const auto frames = static_cast<std::ptrdiff_t>(input.frames());
  DenseGrads<T> grads{SeqTensor<T>(input.channels(), input.frames()),
                      std::vector<T>(layer.weights.size(), T(0)),
                      std::vector<T>(layer.out_dim, T(0))};
  for (size_t o = 0; o < layer.out_dim; ++o) {
    const T* dy = upstream.channel(o).data();
    T bias_grad = T(0);
    for (std::ptrdiff_t t = 0; t < frames; ++t) bias_grad += dy[t];
    grads.bias[o] = bias_grad;
    for (size_t i = 0; i < layer.in_dim; ++i) {
      grads.weights[o * layer.in_dim + i] =
          ShiftedDot(dy, input.channel(i).data(), 0, frames);
      ShiftedAxpy(layer.w(o, i), dy, grads.input.channel(i).data(), 0, frames);
    }
  }
  return grads;
}

template <typename T>
PoolResult<T> MaxPoolTime(const SeqTensor<T>& input, PoolAlignment alignment) {
  const size_t frames = input.frames();
  const size_t pooled = (frames + 1) / 2;
  PoolResult<T> result{SeqTensor<T>(input.channels(), pooled),
                       std::vector<uint32_t>(input.channels() * pooled)};
  // First frame of window k; the window is {first, first + 1}.
  const std::ptrdiff_t shift = alignment == PoolAlignment::kCausal ? -1 : 0;
  for (size_t c = 0; c < input.channels(); ++c) {
    auto x = input.channel(c);
    auto y = result.output.channel(c);
    for (size_t k = 0; k < pooled; ++k) {
      std::ptrdiff_t first = 2 * static_cast<std::ptrdiff_t>(k) + shift;
      T best = -std::numeric_limits<T>::infinity();
      std::ptrdiff_t best_t = -1;
      for (std::ptrdiff_t t = first; t < first + 2; ++t) {
        if (t < 0 || t >= static_cast<std::ptrdiff_t>(frames)) continue;
        if (best_t < 0 || x[t] > best) {
          best = x[t];
          best_t = t;
        }
      }
      y[k] = best;
      result.argmax[c * pooled + k] = static_cast<uint32_t>(best_t);
    }
  }
  return result;
}

template <typename T>
SeqTensor<T> MaxPoolTimeBackward(const SeqTensor<T>& upstream,
                                 std::span<const uint32_t> argmax,
                                 size_t input_frames) {
  if (argmax.size() != upstream.size() ||
      upstream.frames() != (input_frames + 1) / 2) {
    throw ConfigError("max pool backward: argmax/upstream shape mismatch");
  }
  SeqTensor<T> grad(upstream.channels(), input_frames);
  const size_t pooled = upstream.frames();
  for (size_t c = 0; c < upstream.channels(); ++c) {
    auto dy = upstream.channel(c);
    auto dx = grad.channel(c);
    for (size_t k = 0; k < pooled; ++k) dx[argmax[c * pooled + k]] += dy[k];
  }
  return grad;
}

template <typename T>
SeqTensor<T> UpsampleTime(const SeqTensor<T>& input, size_t target_frames) {
  const size_t frames = input.frames();
  if (target_frames != 2 * frames && target_frames + 1 != 2 * frames) {
    throw ConfigError("upsample target " + std::to_string(target_frames) +
                      " frames is not 2T or 2T-1 for T=" +
                      std::to_string(frames));
  }
  SeqTensor<T> out(input.channels(), target_frames);
  for (size_t c = 0; c < input.channels(); ++c) {
    auto x = input.channel(c);
    auto y = out.channel(c);
    for (size_t t = 0; t < target_frames; ++t) y[t] = x[t / 2];
  }
  return out;
}

template <typename T>
SeqTensor<T> UpsampleTimeBackward(const SeqTensor<T>& upstream,
                                  size_t source_frames) {
  const size_t target = upstream.frames();
  if (target != 2 * source_frames && target + 1 != 2 * source_frames) {
    throw ConfigError("upsample backward: inconsistent frame counts");
  }
  SeqTensor<T> grad(upstream.channels(), source_frames);
  for (size_t c = 0; c < upstream.channels(); ++c) {
    auto dy = upstream.channel(c);
    auto dx = grad.channel(c);
    for (size_t t = 0; t < target; ++t) dx[t / 2] += dy[t];
  }
  return grad;
}

std::string_view ActivationName(Activation kind) {
  switch (kind) {
    case Activation::kSigmoid:
      return "sigmoid";
    case Activation::kRelu:
      return "relu";
    case Activation::kTanh:
      return "tanh";
    case Activation::kGated:
      return "gated";
    case Activation::kNormalizedRelu:
      return "normalized_relu";
  }
  return "unknown";
}

Activation ParseActivation(std::string_view name) {
  for (Activation kind :
       {Activation::kSigmoid, Activation::kRelu, Activation::kTanh,
        Activation::kGated, Activation::kNormalizedRelu}) {
    if (ActivationName(kind) == name) return kind;
  }
  throw ConfigError("unknown activation '" + std::string(name) +
                    "' (expected sigmoid|relu|tanh|gated|normalized_relu)");
}

template <typename T>
SeqTensor<T> ActivationForward(const SeqTensor<T>& input, Activation kind) {
  const size_t channels = input.channels();
  const size_t frames = input.frames();
  switch (kind) {
    case Activation::kSigmoid:
    case Activation::kRelu:
    case Activation::kTanh: {
      SeqTensor<T> out(channels, frames);
      auto x = input.data();
      auto y = out.data();
      for (size_t n = 0; n < x.size(); ++n) {
        if (kind == Activation::kSigmoid) {
          y[n] = Sigmoid(x[n]);
        } else if (kind == Activation::kRelu) {
          y[n] = x[n] > T(0) ? x[n] : T(0);
        } else {
          y[n] = std::tanh(x[n]);
        }
      }
      return out;
    }
    case Activation::kGated: {
      if (channels % 2 != 0) {
        throw ConfigError("gated activation needs an even channel count, got " +
                          std::to_string(channels));
      }
      const size_t half = channels / 2;
      SeqTensor<T> out(half, frames);
      for (size_t c = 0; c < half; ++c) {
        auto a = input.channel(c);
        auto b = input.channel(c + half);
        auto y = out.channel(c);
        for (size_t t = 0; t < frames; ++t) {
          y[t] = std::tanh(a[t]) * Sigmoid(b[t]);
        }
      }
      return out;
    }
    case Activation::kNormalizedRelu: {
      SeqTensor<T> out(channels, frames);
      std::vector<T> frame_max(frames, T(0));
      for (size_t c = 0; c < channels; ++c) {
        auto x = input.channel(c);
        for (size_t t = 0; t < frames; ++t) {
          frame_max[t] = std::max(frame_max[t], x[t]);
        }
      }
      const T eps = static_cast<T>(kNormalizedReluEpsilon);
      for (size_t c = 0; c < channels; ++c) {
        auto x = input.channel(c);
        auto y = out.channel(c);
        for (size_t t = 0; t < frames; ++t) {
          T r = x[t] > T(0) ? x[t] : T(0);
          y[t] = r / (frame_max[t] + eps);
        }
      }
      return out;
    }
  }
  throw ConfigError("unhandled activation");
}

template <typename T>
SeqTensor<T> ActivationBackward(const SeqTensor<T>& input,
                                const SeqTensor<T>& output,
                                const SeqTensor<T>& upstream,
                                Activation kind) {
  if (!output.SameShape(upstream)) {
    throw ConfigError("activation backward: upstream/output shape mismatch");
  }
  const size_t channels = input.channels();
  const size_t frames = input.frames();
  SeqTensor<T> grad(channels, frames);
  switch (kind) {
    case Activation::kSigmoid:
    case Activation::kRelu:
    case Activation::kTanh: {
      auto x = input.data();
      auto y = output.data();
      auto dy = upstream.data();
      auto dx = grad.data();
      for (size_t n = 0; n < x.size(); ++n) {
        if (kind == Activation::kSigmoid) {
          dx[n] = dy[n] * y[n] * (T(1) - y[n]);
        } else if (kind == Activation::kRelu) {
          dx[n] = x[n] > T(0) ? dy[n] : T(0);
        } else {
          dx[n] = dy[n] * (T(1) - y[n] * y[n]);
        }
      }
      return grad;
    }
    case Activation::kGated: {
      const size_t half = channels / 2;
      for (size_t c = 0; c < half; ++c) {
        auto a = input.channel(c);
        auto b = input.channel(c + half);
        auto dy = upstream.channel(c);
        auto da = grad.channel(c);
        auto db = grad.channel(c + half);
        for (size_t t = 0; t < frames; ++t) {
          T ta = std::tanh(a[t]);
          T sb = Sigmoid(b[t]);
          da[t] = dy[t] * (T(1) - ta * ta) * sb;
          db[t] = dy[t] * ta * sb * (T(1) - sb);
        }
      }
      return grad;
    }
    case Activation::kNormalizedRelu: {
      // y_c = r_c / (m + eps) with r = relu(x), m = max_c r_c. The max is
      // differentiated through its first maximizing channel.
      const T eps = static_cast<T>(kNormalizedReluEpsilon);
      for (size_t t = 0; t < frames; ++t) {
        size_t arg = 0;
        T m = T(0);
        for (size_t c = 0; c < channels; ++c) {
          T r = input.at(c, t) > T(0) ? input.at(c, t) : T(0);
          if (c == 0 || r > m) {
            m = r;
            arg = c;
          }
        }
        const T denom = m + eps;
        T weighted = T(0);
        for (size_t c = 0; c < channels; ++c) {
          weighted += upstream.at(c, t) * output.at(c, t);
        }
        for (size_t c = 0; c < channels; ++c) {
          if (input.at(c, t) <= T(0)) continue;
          T dr = upstream.at(c, t) / denom;
          if (c == arg) dr -= weighted / denom;
          grad.at(c, t) = dr;
        }
      }
      return grad;
    }
  }
  throw ConfigError("unhandled activation");
}

template <typename T>
SeqTensor<T> SpatialDropout(const SeqTensor<T>& input, double rate, Rng& rng,
                            bool training, std::vector<T>* channel_scale) {
  if (!(rate >= 0.0 && rate < 1.0)) {
    throw ConfigError("dropout rate must be in [0, 1), got " +
                      std::to_string(rate));
  }
  if (channel_scale) channel_scale->assign(input.channels(), T(1));
  if (!training || rate == 0.0) return input;
  SeqTensor<T> out = input;
  const T keep_scale = static_cast<T>(1.0 / (1.0 - rate));
  for (size_t c = 0; c < input.channels(); ++c) {
    const T scale = rng.Uniform01() < rate ? T(0) : keep_scale;
    if (channel_scale) (*channel_scale)[c] = scale;
    for (T& v : out.channel(c)) v *= scale;
  }
  return out;
}

template <typename T>
SeqTensor<T> SpatialDropoutBackward(const SeqTensor<T>& upstream,
                                    std::span<const T> channel_scale) {
  if (channel_scale.size() != upstream.channels()) {
    throw ConfigError("dropout backward: scale/channel count mismatch");
  }
  SeqTensor<T> grad = upstream;
  for (size_t c = 0; c < grad.channels(); ++c) {
    for (T& v : grad.channel(c)) v *= channel_scale[c];
  }
  return grad;
}

template <typename T>
SeqTensor<T> SoftmaxFrames(const SeqTensor<T>& logits) {
  const size_t channels = logits.channels();
  const size_t frames = logits.frames();
  SeqTensor<T> probs(channels, frames);
  for (size_t t = 0; t < frames; ++t) {
    T m = logits.at(0, t);
    for (size_t c = 1; c < channels; ++c) m = std::max(m, logits.at(c, t));
    T sum = T(0);
    for (size_t c = 0; c < channels; ++c) {
      T e = std::exp(logits.at(c, t) - m);
      probs.at(c, t) = e;
      sum += e;
    }
    for (size_t c = 0; c < channels; ++c) probs.at(c, t) /= sum;
  }
  return probs;
}

template <typename T>
SeqTensor<T> SoftmaxFramesBackward(const SeqTensor<T>& probs,
                                   const SeqTensor<T>& upstream) {
  if (!probs.SameShape(upstream)) {
    throw ConfigError("softmax backward: shape mismatch");
  }
  SeqTensor<T> grad(probs.channels(), probs.frames());
  for (size_t t = 0; t < probs.frames(); ++t) {
    T dot = T(0);
    for (size_t c = 0; c < probs.channels(); ++c) {
      dot += upstream.at(c, t) * probs.at(c, t);
    }
    for (size_t c = 0; c < probs.channels(); ++c) {
      grad.at(c, t) = probs.at(c, t) * (upstream.at(c, t) - dot);
    }
  }
  return grad;
}

template <typename T>
LossAndGrad<T> CrossEntropy(const SeqTensor<T>& probs,
                            std::span<const int> labels,
                            std::span<const uint8_t> mask) {
  const size_t frames = probs.frames();
  const size_t classes = probs.channels();
  if (labels.size() != frames) {
    throw DataError("cross entropy: " + std::to_string(labels.size()) +
                    " labels for " + std::to_string(frames) + " frames");
  }
  if (!mask.empty() && mask.size() != frames) {
    throw ConfigError("cross entropy: mask length does not match frames");
  }
  size_t valid = 0;
  for (size_t t = 0; t < frames; ++t) {
    if (!mask.empty() && !mask[t]) continue;
    if (labels[t] < 0 || static_cast<size_t>(labels[t]) >= classes) {
      throw DataError("label " + std::to_string(labels[t]) + " at frame " +
                      std::to_string(t) + " outside [0, " +
                      std::to_string(classes) + ")");
    }
    ++valid;
  }
  LossAndGrad<T> result{0.0, SeqTensor<T>(classes, frames)};
  if (valid == 0) return result;
  const double inv = 1.0 / static_cast<double>(valid);
  constexpr double kTiny = 1e-30;
  double total = 0.0;
  for (size_t t = 0; t < frames; ++t) {
    if (!mask.empty() && !mask[t]) continue;
    const auto label = static_cast<size_t>(labels[t]);
    total -= std::log(std::max(static_cast<double>(probs.at(label, t)), kTiny));
    for (size_t c = 0; c < classes; ++c) {
      double target = c == label ? 1.0 : 0.0;
      result.logit_grad.at(c, t) =
          static_cast<T>((static_cast<double>(probs.at(c, t)) - target) * inv);
    }
  }
  result.loss = total * inv;
  return result;
}

#define TCN_INSTANTIATE_OPS(T)                                                \
  template SeqTensor<T> TemporalConvForward(                                  \
      const SeqTensor<T>&, const ConvFilterBank<T>&, ConvMode, size_t);       \
  template ConvGrads<T> TemporalConvBackward(const SeqTensor<T>&,             \
                                             const ConvFilterBank<T>&,        \
                                             const SeqTensor<T>&, ConvMode,   \
                                             size_t);                         \
  template SeqTensor<T> DenseForward(const SeqTensor<T>&,                     \
                                     const DenseLayer<T>&);                   \
  template DenseGrads<T> DenseBackward(const SeqTensor<T>&,                   \
                                       const DenseLayer<T>&,                  \
                                       const SeqTensor<T>&);                  \
  template PoolResult<T> MaxPoolTime(const SeqTensor<T>&, PoolAlignment);     \
  template SeqTensor<T> MaxPoolTimeBackward(                                  \
      const SeqTensor<T>&, std::span<const uint32_t>, size_t);                \
  template SeqTensor<T> UpsampleTime(const SeqTensor<T>&, size_t);            \
  template SeqTensor<T> UpsampleTimeBackward(const SeqTensor<T>&, size_t);    \
  template SeqTensor<T> ActivationForward(const SeqTensor<T>&, Activation);   \
  template SeqTensor<T> ActivationBackward(                                   \
      const SeqTensor<T>&, const SeqTensor<T>&, const SeqTensor<T>&,          \
      Activation);                                                            \
  template SeqTensor<T> SpatialDropout(const SeqTensor<T>&, double, Rng&,     \
                                       bool, std::vector<T>*);                \
  template SeqTensor<T> SpatialDropoutBackward(const SeqTensor<T>&,           \
                                               std::span<const T>);           \
  template SeqTensor<T> SoftmaxFrames(const SeqTensor<T>&);                   \
  template SeqTensor<T> SoftmaxFramesBackward(const SeqTensor<T>&,            \
                                              const SeqTensor<T>&);           \
  template LossAndGrad<T> CrossEntropy(const SeqTensor<T>&,                   \
                                       std::span<const int>,                  \
                                       std::span<const uint8_t>);

TCN_INSTANTIATE_OPS(float)
TCN_INSTANTIATE_OPS(double)

#undef TCN_INSTANTIATE_OPS

}  // namespace tcn::nn
