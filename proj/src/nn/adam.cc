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

#include "tcn/nn/adam.h"

#include <cmath>
#include <string>

#include "tcn/error.h"

namespace tcn::nn {

template <typename T>
void AdamState<T>::Reset(std::span<const size_t> sizes) {
  step_ = 0;
  m_.clear();
  v_.clear();
  for (size_t n : sizes) {
    m_.emplace_back(n, T(0));
    v_.emplace_back(n, T(0));
  }
}

template <typename T>
void AdamState<T>::Step(std::span<const std::span<T>> params,
                        std::span<const std::span<const T>> grads) {
  if (params.size() != grads.size()) {
    throw ConfigError("adam: " + std::to_string(params.size()) +
                      " parameter tensors but " +
                      std::to_string(grads.size()) + " gradients");
  }
  if (m_.empty() && step_ == 0) {
    std::vector<size_t> sizes;
    for (auto p : params) sizes.push_back(p.size());
    Reset(sizes);
  }
  if (m_.size() != params.size()) {
    throw ConfigError("adam: state holds " + std::to_string(m_.size()) +
                      " tensors, step given " + std::to_string(params.size()));
  }
  for (size_t n = 0; n < params.size(); ++n) {
    if (params[n].size() != grads[n].size() || params[n].size() != m_[n].size()) {
      throw ConfigError("adam: shape mismatch in tensor " + std::to_string(n));
    }
  }
  ++step_;
  const double b1 = options_.beta1;
  const double b2 = options_.beta2;
  const double correction1 = 1.0 - std::pow(b1, static_cast<double>(step_));
  const double correction2 = 1.0 - std::pow(b2, static_cast<double>(step_));
  const double lr = options_.learning_rate;
  const double eps = options_.epsilon;
  for (size_t n = 0; n < params.size(); ++n) {
    std::span<T> p = params[n];
    std::span<const T> g = grads[n];
    std::vector<T>& m = m_[n];
    std::vector<T>& v = v_[n];
    for (size_t i = 0; i < p.size(); ++i) {
      const double gi = static_cast<double>(g[i]);
      const double mi = b1 * static_cast<double>(m[i]) + (1.0 - b1) * gi;
      const double vi = b2 * static_cast<double>(v[i]) + (1.0 - b2) * gi * gi;
      m[i] = static_cast<T>(mi);
      v[i] = static_cast<T>(vi);
      const double update =
          lr * (mi / correction1) / (std::sqrt(vi / correction2) + eps);
      p[i] = static_cast<T>(static_cast<double>(p[i]) - update);
    }
  }
}

template class AdamState<float>;
template class AdamState<double>;

}  // namespace tcn::nn
