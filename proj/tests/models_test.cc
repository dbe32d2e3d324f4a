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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "tcn/error.h"
#include "tcn/models/spec.h"
#include "tcn/models/train.h"
#include "tcn/random.h"

namespace tcn::models {
namespace {

EdTcnSpec SmallEd(bool causal) {
  EdTcnSpec spec;
  spec.num_layers = 2;
  spec.filter_duration = 5;
  spec.filters = {6, 8};
  spec.causal = causal;
  spec.input_dim = 3;
  spec.num_classes = 4;
  return spec;
}

DilatedTcnSpec SmallDilated(bool causal) {
  DilatedTcnSpec spec;
  spec.num_blocks = 2;
  spec.layers_per_block = 2;
  spec.filters = 6;
  spec.causal = causal;
  spec.input_dim = 3;
  spec.num_classes = 4;
  return spec;
}

SeqTensor<double> RandomInput(uint64_t seed, size_t channels, size_t frames) {
  Rng rng(seed);
  SeqTensor<double> x(channels, frames);
  for (double& v : x.data()) v = rng.Uniform(-1, 1);
  return x;
}

TEST(ReceptiveFieldTest, EncoderDecoder) {
  EXPECT_EQ(ReceptiveFieldEd(1, 1), 2);
  EXPECT_EQ(ReceptiveFieldEd(15, 2), 46);
  EXPECT_EQ(ReceptiveFieldEd(2, 3), 15);
}

TEST(ReceptiveFieldTest, Dilated) {
  EXPECT_EQ(ReceptiveFieldDilated(4, 5), 128);
  EXPECT_EQ(ReceptiveFieldDilated(3, 5), 96);
  EXPECT_EQ(ReceptiveFieldDilated(1, 1), 2);
}

TEST(ReceptiveFieldTest, RejectsNonPositive) {
  EXPECT_THROW(ReceptiveFieldEd(0, 2), ConfigError);
  EXPECT_THROW(ReceptiveFieldDilated(1, 0), ConfigError);
}

TEST(SpecTest, DefaultFilterSchedule) {
  EXPECT_EQ(DefaultEdFilters(3), (std::vector<int>{128, 160, 192}));
  EdTcnSpec spec;
  spec.num_layers = 3;
  spec.input_dim = 2;
  spec.num_classes = 2;
  EXPECT_EQ(EdFilters(spec), (std::vector<int>{128, 160, 192}));
}

TEST(SpecTest, DilatedLayerAudit) {
  DilatedTcnSpec spec;
  spec.num_blocks = 2;
  spec.layers_per_block = 3;
  spec.filters = 128;
  spec.input_dim = 3;
  spec.num_classes = 5;
  std::vector<size_t> dilations;
  for (const auto& layer : LayerTable(spec)) {
    if (layer.kind == "conv") dilations.push_back(layer.dilation);
  }
  EXPECT_EQ(dilations, (std::vector<size_t>{1, 2, 4, 1, 2, 4}));
}

TEST(SpecTest, ValidationNamesTheField) {
  EdTcnSpec spec = SmallEd(false);
  spec.filters = {6};
  try {
    Validate(spec);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("filters"), std::string::npos);
  }
  DilatedTcnSpec dil = SmallDilated(false);
  dil.num_classes = 0;
  EXPECT_THROW(Validate(dil), ConfigError);
}

TEST(SpecTest, ParameterNamesFollowTensors) {
  const ModelSpec spec = SmallEd(false);
  const auto model = Build<double>(spec, 1);
  const auto names = ParameterNames(spec);
  ASSERT_EQ(names.size(), model.params.Tensors().size());
  EXPECT_EQ(names.front(), "encoder.1.weight");
  EXPECT_EQ(names.back(), "output.bias");
}

TEST(BuildTest, SameSeedSameParameters) {
  EXPECT_EQ(Build<float>(SmallEd(false), 3).params,
            Build<float>(SmallEd(false), 3).params);
  EXPECT_NE(Build<float>(SmallEd(false), 3).params,
            Build<float>(SmallEd(false), 4).params);
}

TEST(BuildTest, GlorotBoundsAndZeroBiases) {
  const auto model = Build<double>(SmallDilated(false), 5);
  const auto table = LayerTable(model.spec);
  size_t conv = 0, dense = 0;
  for (const auto& layer : table) {
    const double fan = static_cast<double>(
        (layer.in_channels + layer.out_channels) * layer.taps);
    const double bound = std::sqrt(6.0 / fan);
    const auto& w = layer.kind == "conv" ? model.params.convs[conv].weights
                                         : model.params.dense[dense].weights;
    const auto& b = layer.kind == "conv" ? model.params.convs[conv].bias
                                         : model.params.dense[dense].bias;
    for (double v : w) EXPECT_LE(std::abs(v), bound);
    for (double v : b) EXPECT_EQ(v, 0.0);
    (layer.kind == "conv" ? conv : dense)++;
  }
}

class ForwardShapeTest : public ::testing::TestWithParam<size_t> {};

TEST_P(ForwardShapeTest, OutputKeepsFrameCountAndNormalizes) {
  const size_t frames = GetParam();
  for (bool causal : {false, true}) {
    for (const ModelSpec& spec :
         {ModelSpec(SmallEd(causal)), ModelSpec(SmallDilated(causal))}) {
      const auto model = Build<double>(spec, 9);
      const auto pass = Forward(model, RandomInput(frames, 3, frames));
      ASSERT_EQ(pass.probs.frames(), frames);
      ASSERT_EQ(pass.probs.channels(), 4u);
      for (size_t t = 0; t < frames; ++t) {
        double sum = 0.0;
        for (size_t c = 0; c < 4; ++c) sum += pass.probs.at(c, t);
        EXPECT_NEAR(sum, 1.0, 1e-9);
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Lengths, ForwardShapeTest,
                         ::testing::Values(1, 2, 3, 5, 7, 8, 13, 150));

TEST(ForwardTest, InputDimensionMismatchIsDataError) {
  const auto model = Build<double>(SmallEd(false), 1);
  EXPECT_THROW(Forward(model, RandomInput(1, 2, 8)), DataError);
}

TEST(ForwardTest, ArchitectureSpecificEntryPoints) {
  const auto ed = Build<double>(SmallEd(false), 1);
  const auto dil = Build<double>(SmallDilated(false), 1);
  const auto x = RandomInput(2, 3, 10);
  EXPECT_EQ(ForwardEd(ed, x), Forward(ed, x).probs);
  EXPECT_EQ(ForwardDilated(dil, x), Forward(dil, x).probs);
  EXPECT_THROW(ForwardEd(dil, x), ConfigError);
  EXPECT_THROW(ForwardDilated(ed, x), ConfigError);
}

// Changing input frame t' must leave every output frame t < t' untouched.
template <typename Spec>
void ExpectCausal(const Spec& spec) {
  const auto model = Build<double>(spec, 17);
  const size_t frames = 12;
  const auto x = RandomInput(3, 3, frames);
  const auto base = Forward(model, x).probs;
  for (size_t changed = 0; changed < frames; ++changed) {
    auto y = x;
    for (size_t c = 0; c < 3; ++c) y.at(c, changed) += 0.75;
    const auto probs = Forward(model, y).probs;
    for (size_t t = 0; t < changed; ++t) {
      for (size_t c = 0; c < 4; ++c) {
        ASSERT_EQ(probs.at(c, t), base.at(c, t))
            << "frame " << t << " moved when frame " << changed << " changed";
      }
    }
  }
}

TEST(CausalityTest, EncoderDecoder) { ExpectCausal(SmallEd(true)); }
TEST(CausalityTest, Dilated) { ExpectCausal(SmallDilated(true)); }

TEST(CausalityTest, AcausalModelsSeeTheFuture) {
  const auto model = Build<double>(SmallEd(false), 17);
  auto x = RandomInput(3, 3, 12);
  const auto base = Forward(model, x).probs;
  for (size_t c = 0; c < 3; ++c) x.at(c, 6) += 0.75;
  EXPECT_NE(Forward(model, x).probs.at(0, 5), base.at(0, 5));
}

TEST(InputProjectionTest, IdentityPassesInputThrough) {
  DilatedTcnSpec spec = SmallDilated(false);
  spec.filters = 3;
  auto model = Build<double>(spec, 2);
  auto& proj = model.params.dense[0];
  std::fill(proj.weights.begin(), proj.weights.end(), 0.0);
  for (size_t i = 0; i < 3; ++i) proj.w(i, i) = 1.0;
  const auto x = RandomInput(4, 3, 6);
  EXPECT_EQ(InputProjection(model, x), x);
}

TEST(InputProjectionTest, ProjectsToFilterWidth) {
  DilatedTcnSpec spec = SmallDilated(false);
  spec.filters = 128;
  const auto model = Build<double>(spec, 2);
  const auto out = InputProjection(model, RandomInput(4, 3, 9));
  EXPECT_EQ(out.channels(), 128u);
  EXPECT_EQ(out.frames(), 9u);
}

TEST(PredictLabelsTest, ArgmaxPerFrame) {
  const SeqTensor<double> probs(2, 2, std::vector<double>{0.7, 0.2, 0.3, 0.8});
  EXPECT_EQ(PredictLabels(probs), (std::vector<int>{0, 1}));
}

TEST(PredictLabelsTest, TiesGoToLowestClass) {
  const SeqTensor<double> probs(2, 1, 0.5);
  EXPECT_EQ(PredictLabels(probs), (std::vector<int>{0}));
}

TEST(PredictLabelsTest, UntrainedModelStaysInRange) {
  const auto model = Build<float>(SmallDilated(false), 8);
  Rng rng(1);
  SeqTensor<float> x(3, 40);
  for (float& v : x.data()) v = static_cast<float>(rng.Uniform(-3, 3));
  for (int label : PredictLabels(model, x)) {
    EXPECT_GE(label, 0);
    EXPECT_LT(label, 4);
  }
}

TEST(CastModelTest, RoundTripsThroughDouble) {
  const auto model = Build<float>(SmallEd(false), 4);
  EXPECT_EQ(CastModel<float>(CastModel<double>(model)).params, model.params);
}

std::vector<LabeledSequence<float>> ToyData(uint64_t seed, int count) {
  Rng rng(seed);
  std::vector<LabeledSequence<float>> data;
  for (int n = 0; n < count; ++n) {
    LabeledSequence<float> seq{SeqTensor<float>(3, 20), {}};
    for (size_t t = 0; t < 20; ++t) {
      const int label = static_cast<int>((t / 5 + n) % 4);
      seq.labels.push_back(label);
      for (size_t c = 0; c < 3; ++c) {
        seq.features.at(c, t) =
            static_cast<float>((label == static_cast<int>(c) ? 1.0 : -1.0) +
                               0.1 * rng.Uniform(-1, 1));
      }
    }
    data.push_back(std::move(seq));
  }
  return data;
}

TEST(TrainTest, ZeroLearningRateKeepsParameters) {
  const auto model = Build<float>(SmallEd(false), 1);
  TrainConfig config;
  config.epochs = 1;
  config.adam.learning_rate = 0.0;
  const auto data = ToyData(1, 3);
  const auto trained = Train(model, std::span<const LabeledSequence<float>>(data), config);
  EXPECT_EQ(trained.params, model.params);
  ASSERT_EQ(trained.metadata.loss_curve.size(), 1u);
  EXPECT_GT(trained.metadata.loss_curve[0], 0.0);
  EXPECT_EQ(trained.metadata.epochs, 1);
}

TEST(TrainTest, FixedSeedIsBitIdentical) {
  const auto data = ToyData(2, 4);
  TrainConfig config;
  config.epochs = 3;
  config.seed = 77;
  auto run = [&] {
    return Train(Build<float>(SmallDilated(false), 77), std::span(data),
                 config);
  };
  const auto a = run();
  const auto b = run();
  EXPECT_EQ(a.params, b.params);
  EXPECT_EQ(a.metadata, b.metadata);
}

TEST(TrainTest, LossDecreasesOnSeparableData) {
  const auto data = ToyData(3, 6);
  TrainConfig config;
  config.epochs = 20;
  config.adam.learning_rate = 1e-2;
  // Whole-channel dropout on six filters mostly adds noise here.
  config.dropout = 0.0;
  int calls = 0;
  const auto trained =
      Train(Build<float>(SmallEd(false), 5), std::span(data), config,
            [&](int epoch, double) { EXPECT_EQ(epoch, ++calls); });
  EXPECT_EQ(calls, 20);
  const auto& curve = trained.metadata.loss_curve;
  EXPECT_LT(curve.back(), 0.5 * curve.front());
}

TEST(TrainTest, RejectsBadInputs) {
  const auto model = Build<float>(SmallEd(false), 1);
  TrainConfig config;
  config.epochs = 1;
  std::vector<LabeledSequence<float>> empty;
  EXPECT_THROW(Train(model, std::span<const LabeledSequence<float>>(empty), config), ConfigError);
  auto data = ToyData(1, 1);
  config.epochs = 0;
  EXPECT_THROW(Train(model, std::span<const LabeledSequence<float>>(data), config), ConfigError);
  config.epochs = 1;
  data[0].labels[3] = 4;
  EXPECT_THROW(Train(model, std::span<const LabeledSequence<float>>(data), config), DataError);
  data = ToyData(1, 1);
  data[0].labels.pop_back();
  EXPECT_THROW(Train(model, std::span<const LabeledSequence<float>>(data), config), DataError);
}

}  // namespace
}  // namespace tcn::models
