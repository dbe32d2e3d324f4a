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

#include "tcn/models/serialize.h"

#include <gtest/gtest.h>

#include <cstring>
#include <vector>

#include "tcn/error.h"
#include "tcn/models/model.h"
#include "tcn/random.h"
#include "testing/oracles.h"

namespace tcn::models {
namespace {

TrainedModel SampleEd() {
  EdTcnSpec spec;
  spec.num_layers = 2;
  spec.filter_duration = 3;
  spec.filters = {4, 5};
  spec.causal = true;
  spec.activation = nn::Activation::kTanh;
  spec.input_dim = 3;
  spec.num_classes = 2;
  auto model = Build<float>(spec, 12);
  Rng rng(1);
  for (auto tensor : model.params.Tensors()) {
    for (float& v : tensor) v = static_cast<float>(rng.Uniform(-2, 2));
  }
  model.metadata = {7, 0xfeedULL, {1.5, 0.25, 1e-300}};
  return model;
}

TrainedModel SampleDilated() {
  DilatedTcnSpec spec;
  spec.num_blocks = 1;
  spec.layers_per_block = 3;
  spec.filters = 4;
  spec.input_dim = 2;
  spec.num_classes = 3;
  return Build<float>(spec, 3);
}

TEST(SpecRecordTest, RoundTripsBothArchitectures) {
  for (const auto& model : {SampleEd(), SampleDilated()}) {
    EXPECT_EQ(ParseSpecRecord(FormatSpecRecord(model.spec)), model.spec);
  }
}

TEST(SpecRecordTest, DefaultFilterScheduleStaysEmpty) {
  EdTcnSpec spec;
  spec.input_dim = 2;
  spec.num_classes = 3;
  const auto parsed = ParseSpecRecord(FormatSpecRecord(spec));
  EXPECT_TRUE(std::get<EdTcnSpec>(parsed).filters.empty());
}

TEST(SpecRecordTest, UnknownKeyIsParseError) {
  std::string record = FormatSpecRecord(SampleEd().spec) + "colour=blue\n";
  EXPECT_THROW(ParseSpecRecord(record), ParseError);
}

TEST(SerializeTest, RoundTripIsBitExact) {
  for (const auto& model : {SampleEd(), SampleDilated()}) {
    const auto bytes = SerializeModel(model);
    const auto loaded = DeserializeModel(bytes);
    EXPECT_EQ(loaded.spec, model.spec);
    EXPECT_EQ(loaded.metadata, model.metadata);
    const auto a = model.params.Tensors();
    const auto b = loaded.params.Tensors();
    ASSERT_EQ(a.size(), b.size());
    for (size_t i = 0; i < a.size(); ++i) {
      ASSERT_EQ(a[i].size(), b[i].size());
      EXPECT_EQ(std::memcmp(a[i].data(), b[i].data(), a[i].size_bytes()), 0);
    }
    EXPECT_EQ(SerializeModel(loaded), bytes);
  }
}

TEST(SerializeTest, LoadedModelPredictsIdentically) {
  const auto model = SampleEd();
  testing::ScopedTempDir dir;
  const auto path = dir.path() / "m.tcnm";
  SaveModel(model, path);
  const auto loaded = LoadModel(path);
  Rng rng(5);
  SeqTensor<float> x(3, 17);
  for (float& v : x.data()) v = static_cast<float>(rng.Uniform(-1, 1));
  EXPECT_EQ(Forward(loaded, x).probs, Forward(model, x).probs);
}

TEST(SerializeTest, StartsWithMagic) {
  const auto bytes = SerializeModel(SampleDilated());
  ASSERT_GE(bytes.size(), 8u);
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 4), "TCNM");
}

TEST(SerializeTest, RejectsCorruption) {
  const auto bytes = SerializeModel(SampleEd());
  auto bad_magic = bytes;
  bad_magic[0] = 'X';
  EXPECT_THROW(DeserializeModel(bad_magic), ParseError);

  auto bad_version = bytes;
  bad_version[4] = 9;
  EXPECT_THROW(DeserializeModel(bad_version), ParseError);

  auto truncated = bytes;
  truncated.resize(bytes.size() - 3);
  EXPECT_THROW(DeserializeModel(truncated), ParseError);

  auto trailing = bytes;
  trailing.push_back(0);
  EXPECT_THROW(DeserializeModel(trailing), ParseError);
}

TEST(SerializeTest, ErrorsCarryByteOffsets) {
  auto bytes = SerializeModel(SampleEd());
  bytes.resize(20);
  try {
    DeserializeModel(bytes);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("byte"), std::string::npos)
        << e.what();
  }
}

TEST(SerializeTest, MissingFileIsIoError) {
  testing::ScopedTempDir dir;
  EXPECT_THROW(LoadModel(dir.path() / "absent.tcnm"), IoError);
}

}  // namespace
}  // namespace tcn::models
