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

#ifndef TCN_INTERNAL_BYTES_H_
#define TCN_INTERNAL_BYTES_H_

// Little-endian encoding helpers shared by the binary file formats.

#include <bit>
#include <cstdint>
#include <cstring>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tcn/error.h"

namespace tcn::internal {

class ByteWriter {
 public:
  void U32(uint32_t v) { Int(v, 4); }
  void U64(uint64_t v) { Int(v, 8); }
  void F32(float v) { U32(std::bit_cast<uint32_t>(v)); }
  void F64(double v) { U64(std::bit_cast<uint64_t>(v)); }
  void Raw(std::string_view s) { bytes_.insert(bytes_.end(), s.begin(), s.end()); }
  // u32 length prefix, then the bytes.
  void String(std::string_view s) {
    U32(static_cast<uint32_t>(s.size()));
    Raw(s);
  }

  std::vector<uint8_t>& bytes() { return bytes_; }

 private:
  void Int(uint64_t v, int width) {
    for (int i = 0; i < width; ++i) {
      bytes_.push_back(static_cast<uint8_t>(v >> (8 * i)));
    }
  }

  std::vector<uint8_t> bytes_;
};

// Bounds-checked reader; failures throw ParseError naming `what` and the
// byte offset.
class ByteReader {
 public:
  ByteReader(const uint8_t* data, size_t size, std::string source)
      : data_(data), size_(size), source_(std::move(source)) {}

  size_t offset() const { return pos_; }
  size_t remaining() const { return size_ - pos_; }

  uint32_t U32(const char* what) {
    return static_cast<uint32_t>(Int(4, what));
  }
  uint64_t U64(const char* what) { return Int(8, what); }
  float F32(const char* what) { return std::bit_cast<float>(U32(what)); }
  double F64(const char* what) { return std::bit_cast<double>(U64(what)); }
  std::string Raw(size_t n, const char* what) {
    Need(n, what);
    std::string out(reinterpret_cast<const char*>(data_ + pos_), n);
    pos_ += n;
    return out;
  }
  std::string String(const char* what) { return Raw(U32(what), what); }

  [[noreturn]] void Fail(const std::string& message) const {
    throw ParseError(source_ + ": byte " + std::to_string(pos_) + ": " +
                     message);
  }

  void ExpectEnd() const {
    if (pos_ != size_) {
      Fail(std::to_string(size_ - pos_) + " trailing bytes");
    }
  }

 private:
  void Need(size_t n, const char* what) {
    if (n > size_ - pos_) {
      Fail(std::string("truncated ") + what + " (need " + std::to_string(n) +
           " bytes, " + std::to_string(size_ - pos_) + " left)");
    }
  }

  uint64_t Int(int width, const char* what) {
    Need(static_cast<size_t>(width), what);
    uint64_t v = 0;
    for (int i = 0; i < width; ++i) {
      v |= static_cast<uint64_t>(data_[pos_ + i]) << (8 * i);
    }
    pos_ += static_cast<size_t>(width);
    return v;
  }

  const uint8_t* data_;
  size_t size_;
  size_t pos_ = 0;
  std::string source_;
};

}  // namespace tcn::internal

#endif  // TCN_INTERNAL_BYTES_H_
