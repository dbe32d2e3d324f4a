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

#ifndef TCN_NN_OPS_H_
#define TCN_NN_OPS_H_

// Forward and backward passes for the primitives the two temporal networks
// are built from. Every function is pure except SpatialDropout, which draws
// from the caller's Rng. Instantiated for float and double.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "tcn/nn/layers.h"
#include "tcn/nn/seq_tensor.h"
#include "tcn/random.h"

namespace tcn::nn {

enum class ConvMode {
  // taps cover frames t-(d-1)s ... t
  kCausal,
  // taps centered on t: offsets (k - floor(d/2)) * s, so an even d leans left
  kAcausal,
};

// Offset in frames of tap k for a filter with `taps` taps.
std::ptrdiff_t TapOffset(ConvMode mode, size_t taps, size_t k, size_t dilation);

// Same-length temporal convolution with zero padding at both ends.
template <typename T>
SeqTensor<T> TemporalConvForward(const SeqTensor<T>& input,
                                 const ConvFilterBank<T>& filters,
                                 ConvMode mode, size_t dilation = 1);

template <typename T>
struct ConvGrads {
  SeqTensor<T> input;
  std::vector<T> weights;
  std::vector<T> bias;
};

template <typename T>
ConvGrads<T> TemporalConvBackward(const SeqTensor<T>& input,
                                  const ConvFilterBank<T>& filters,
                                  const SeqTensor<T>& upstream, ConvMode mode,
                                  size_t dilation = 1);

template <typename T>
SeqTensor<T> DenseForward(const SeqTensor<T>& input, const DenseLayer<T>& layer);

template <typename T>
struct DenseGrads {
  SeqTensor<T> input;
  std::vector<T> weights;
  std::vector<T> bias;
};

template <typename T>
DenseGrads<T> DenseBackward(const SeqTensor<T>& input,
                            const DenseLayer<T>& layer,
                            const SeqTensor<T>& upstream);

enum class PoolAlignment {
  // output k = max(x[2k], x[2k+1]); an odd tail is padded with -inf
  kAligned,
  // output k = max(x[2k-1], x[2k]); frame -1 is -inf. Combined with
  // UpsampleTime this never lets frame t see frames after t.
  kCausal,
};

template <typename T>
struct PoolResult {
  SeqTensor<T> output;
  // Source frame of each output element, channel-major like the output.
  std::vector<uint32_t> argmax;
};

// Width-2 max pooling across time; output has ceil(T/2) frames.
template <typename T>
PoolResult<T> MaxPoolTime(const SeqTensor<T>& input,
                          PoolAlignment alignment = PoolAlignment::kAligned);

template <typename T>
SeqTensor<T> MaxPoolTimeBackward(const SeqTensor<T>& upstream,
                                 std::span<const uint32_t> argmax,
                                 size_t input_frames);

// Repeats every frame twice and truncates to target_frames, which must be
// 2T or 2T-1.
template <typename T>
SeqTensor<T> UpsampleTime(const SeqTensor<T>& input, size_t target_frames);

template <typename T>
SeqTensor<T> UpsampleTimeBackward(const SeqTensor<T>& upstream,
                                  size_t source_frames);

enum class Activation {
  kSigmoid,
  kRelu,
  kTanh,
  // tanh(a) * sigmoid(b) over the two channel halves [a; b]
  kGated,
  // relu(x) / (max_c relu(x) + 1e-5), max taken per frame
  kNormalizedRelu,
};

inline constexpr double kNormalizedReluEpsilon = 1e-5;

std::string_view ActivationName(Activation kind);
// Accepts sigmoid|relu|tanh|gated|normalized_relu; throws ConfigError.
Activation ParseActivation(std::string_view name);

// Number of pre-activation channels a layer of `width` outputs needs.
inline size_t ActivationInputChannels(Activation kind, size_t width) {
  return kind == Activation::kGated ? 2 * width : width;
}

template <typename T>
SeqTensor<T> ActivationForward(const SeqTensor<T>& input, Activation kind);

// `output` is the forward result for `input`.
template <typename T>
SeqTensor<T> ActivationBackward(const SeqTensor<T>& input,
                                const SeqTensor<T>& output,
                                const SeqTensor<T>& upstream, Activation kind);

// Drops whole channels with probability `rate` and rescales survivors by
// 1/(1-rate). One Uniform01() draw per channel, in channel order; channel c
// is dropped when its draw is < rate. Inference (training=false) and rate 0
// are the identity and draw nothing. `channel_scale`, when given, receives
// the per-channel multiplier for the backward pass.
template <typename T>
SeqTensor<T> SpatialDropout(const SeqTensor<T>& input, double rate, Rng& rng,
                            bool training,
                            std::vector<T>* channel_scale = nullptr);

template <typename T>
SeqTensor<T> SpatialDropoutBackward(const SeqTensor<T>& upstream,
                                    std::span<const T> channel_scale);

template <typename T>
SeqTensor<T> SoftmaxFrames(const SeqTensor<T>& logits);

template <typename T>
SeqTensor<T> SoftmaxFramesBackward(const SeqTensor<T>& probs,
                                   const SeqTensor<T>& upstream);

template <typename T>
struct LossAndGrad {
  double loss = 0.0;
  // d loss / d logits for logits that produced `probs` through SoftmaxFrames.
  SeqTensor<T> logit_grad;
};

// Mean over unmasked frames of -log p(label). `mask` is empty (all frames
// valid) or has one entry per frame, nonzero meaning valid.
template <typename T>
LossAndGrad<T> CrossEntropy(const SeqTensor<T>& probs,
                            std::span<const int> labels,
                            std::span<const uint8_t> mask = {});

}  // namespace tcn::nn

#endif  // TCN_NN_OPS_H_
