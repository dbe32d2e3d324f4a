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

#ifndef TCN_NN_SEQ_TENSOR_H_
#define TCN_NN_SEQ_TENSOR_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "tcn/error.h"

namespace tcn::nn {

// A channels x frames sequence stored channel-major: element (c, t) lives at
// data[c * frames + t], so each channel is a contiguous time series.
template <typename T>
class SeqTensor {
 public:
  using value_type = T;

  SeqTensor() = default;

  SeqTensor(size_t channels, size_t frames, T fill = T(0))
      : channels_(channels), frames_(frames), data_(channels * frames, fill) {
    CheckShape();
  }

  SeqTensor(size_t channels, size_t frames, std::vector<T> data)
      : channels_(channels), frames_(frames), data_(std::move(data)) {
    CheckShape();
    if (data_.size() != channels_ * frames_) {
      throw ConfigError("SeqTensor data length " +
                        std::to_string(data_.size()) + " != " +
                        std::to_string(channels_) + "x" +
                        std::to_string(frames_));
    }
  }

  size_t channels() const { return channels_; }
  size_t frames() const { return frames_; }
  size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  T& at(size_t c, size_t t) { return data_[c * frames_ + t]; }
  const T& at(size_t c, size_t t) const { return data_[c * frames_ + t]; }

  std::span<T> channel(size_t c) {
    return std::span<T>(data_).subspan(c * frames_, frames_);
  }
  std::span<const T> channel(size_t c) const {
    return std::span<const T>(data_).subspan(c * frames_, frames_);
  }

  std::span<T> data() { return data_; }
  std::span<const T> data() const { return data_; }
  std::vector<T>& vector() { return data_; }
  const std::vector<T>& vector() const { return data_; }

  bool SameShape(const SeqTensor& other) const {
    return channels_ == other.channels_ && frames_ == other.frames_;
  }

  bool operator==(const SeqTensor& other) const = default;

 private:
  void CheckShape() const {
    if (channels_ == 0 || frames_ == 0) {
      throw ConfigError("SeqTensor needs at least one channel and one frame");
    }
  }

  size_t channels_ = 0;
  size_t frames_ = 0;
  std::vector<T> data_;
};

template <typename To, typename From>
SeqTensor<To> CastTensor(const SeqTensor<From>& x) {
  std::vector<To> data(x.data().begin(), x.data().end());
  return SeqTensor<To>(x.channels(), x.frames(), std::move(data));
}

}  // namespace tcn::nn

#endif  // TCN_NN_SEQ_TENSOR_H_
