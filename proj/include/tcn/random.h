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

#ifndef TCN_RANDOM_H_
#define TCN_RANDOM_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace tcn {

// Deterministic random stream. The output of std::mt19937_64 is fixed by the
// standard; the conversions below are spelled out here instead of using
// std::*_distribution, whose algorithms differ between standard libraries.
//
//   Uniform01():      (next() >> 11) * 2^-53, in [0, 1)
//   UniformIndex(n):  floor(Uniform01() * n)
//   Shuffle():        Fisher-Yates from the back, j = UniformIndex(i + 1)
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t NextU64() { return engine_(); }

  double Uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform01(); }

  size_t UniformIndex(size_t n) {
    size_t i = static_cast<size_t>(Uniform01() * static_cast<double>(n));
    return i < n ? i : n - 1;
  }

  // Box-Muller; only used by tests and generators that want Gaussian noise.
  double Normal();

  template <typename T>
  void Shuffle(std::vector<T>& items) {
    for (size_t i = items.size(); i > 1; --i) {
      size_t j = UniformIndex(i);
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer over (seed, stream); used to derive independent
// streams (init, training, train/test splits, per-sequence generators).
uint64_t DeriveSeed(uint64_t seed, uint64_t stream);

}  // namespace tcn

#endif  // TCN_RANDOM_H_
