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

#ifndef TCN_NN_ADAM_H_
#define TCN_NN_ADAM_H_

#include <cstdint>
#include <span>
#include <vector>

namespace tcn::nn {

struct AdamOptions {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  bool operator==(const AdamOptions&) const = default;
};

// Moment accumulators for a list of parameter tensors, zero-initialized on
// the first step (or by Reset) to match the tensor shapes.
template <typename T>
class AdamState {
 public:
  explicit AdamState(AdamOptions options = {}) : options_(options) {}

  const AdamOptions& options() const { return options_; }
  uint64_t step() const { return step_; }
  const std::vector<std::vector<T>>& first_moment() const { return m_; }
  const std::vector<std::vector<T>>& second_moment() const { return v_; }

  void Reset(std::span<const size_t> sizes);

  // Bias-corrected update, in place:
  //   m <- b1 m + (1-b1) g,  v <- b2 v + (1-b2) g^2
  //   p <- p - lr * (m / (1-b1^t)) / (sqrt(v / (1-b2^t)) + eps)
  void Step(std::span<const std::span<T>> params,
            std::span<const std::span<const T>> grads);

 private:
  AdamOptions options_;
  uint64_t step_ = 0;
  std::vector<std::vector<T>> m_;
  std::vector<std::vector<T>> v_;
};

template <typename T>
void AdamStep(std::span<const std::span<T>> params,
              std::span<const std::span<const T>> grads, AdamState<T>& state) {
  state.Step(params, grads);
}

}  // namespace tcn::nn

#endif  // TCN_NN_ADAM_H_
