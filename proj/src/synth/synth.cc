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

#include "tcn/synth/synth.h"

#include <map>
#include <sstream>

#include "tcn/error.h"

namespace tcn::synth {
namespace {

constexpr uint64_t kTrainSplitStream = 1;
constexpr uint64_t kTestSplitStream = 2;

int SampleCategorical(const std::array<double, 3>& probs, Rng& rng) {
  const double u = rng.Uniform01();
  double acc = 0.0;
  for (int i = 0; i < 3; ++i) {
    acc += probs[i];
    if (u < acc) return i;
  }
  return 2;
}

void ValidateSpec(const CompositionSpec& spec) {
  if (spec.num_train < 0 || spec.num_test < 0) {
    throw ConfigError("sequence counts must be non-negative");
  }
  if (spec.seq_len < 1) throw ConfigError("seq_len must be >= 1");
  for (int c = 0; c < kNumClasses; ++c) {
    if (spec.durations[c] < 1 || spec.durations[c] > spec.seq_len) {
      throw ConfigError("duration of " + ClassNames()[c] + " is " +
                        std::to_string(spec.durations[c]) +
                        ", must be in [1, seq_len=" +
                        std::to_string(spec.seq_len) + "]");
    }
  }
}

std::vector<Sequence> GenerateSplit(const CompositionSpec& spec,
                                    const TransitionTable& transitions,
                                    uint64_t split_stream, int count) {
  const uint64_t split_seed = DeriveSeed(spec.seed, split_stream);
  std::vector<Sequence> out;
  out.reserve(count);
  for (int n = 0; n < count; ++n) {
    Rng rng(DeriveSeed(split_seed, static_cast<uint64_t>(n)));
    out.push_back(SampleSequence(spec, transitions, rng));
  }
  return out;
}

}  // namespace

std::vector<std::string> ClassNames() { return {"A1", "A2", "A3", "B", "C"}; }

TransitionTable DefaultTransitions() {
  constexpr double kThird = 1.0 / 3.0;
  TransitionTable table;
  table.start = {kThird, kThird, kThird};
  table.next[static_cast<int>(Action::kA)] = {0.0, 0.5, 0.5};
  table.next[static_cast<int>(Action::kB)] = {0.5, 0.0, 0.5};
  table.next[static_cast<int>(Action::kC)] = {0.5, 0.5, 0.0};
  return table;
}

std::array<float, kFeatureDim> FeatureFor(int label) {
  int action = label <= kA3 ? 0 : label - kA3;
  std::array<float, kFeatureDim> f = {-1.0f, -1.0f, -1.0f};
  f[action] = 1.0f;
  return f;
}

Sequence SampleSequence(const CompositionSpec& spec,
                        const TransitionTable& transitions, Rng& rng) {
  const auto length = static_cast<size_t>(spec.seq_len);
  std::vector<int> labels;
  labels.reserve(length + 64);
  auto emit = [&](int label) {
    labels.insert(labels.end(), spec.durations[label], label);
  };
  int action = SampleCategorical(transitions.start, rng);
  while (labels.size() < length) {
    switch (static_cast<Action>(action)) {
      case Action::kA:
        emit(kA1);
        emit(kA2);
        emit(kA3);
        break;
      case Action::kB:
        emit(kB);
        break;
      case Action::kC:
        emit(kC);
        break;
    }
    action = SampleCategorical(transitions.next[action], rng);
  }
  labels.resize(length);

  nn::SeqTensor<float> features(kFeatureDim, length);
  for (size_t t = 0; t < length; ++t) {
    const auto f = FeatureFor(labels[t]);
    for (int c = 0; c < kFeatureDim; ++c) features.at(c, t) = f[c];
  }
  return Sequence{std::move(features), std::move(labels)};
}

SyntheticDataset GenerateComposition(const CompositionSpec& spec) {
  ValidateSpec(spec);
  SyntheticDataset data;
  data.transitions = DefaultTransitions();
  data.class_names = ClassNames();
  data.train =
      GenerateSplit(spec, data.transitions, kTrainSplitStream, spec.num_train);
  data.test =
      GenerateSplit(spec, data.transitions, kTestSplitStream, spec.num_test);
  return data;
}

nn::SeqTensor<float> ShiftFeatures(const nn::SeqTensor<float>& features,
                                   int shift) {
  if (shift < 0 || static_cast<size_t>(shift) >= features.frames()) {
    throw ConfigError("shift must be in [0, T), got " + std::to_string(shift));
  }
  nn::SeqTensor<float> out(features.channels(), features.frames());
  const auto s = static_cast<size_t>(shift);
  for (size_t c = 0; c < features.channels(); ++c) {
    auto x = features.channel(c);
    auto y = out.channel(c);
    for (size_t t = 0; t < features.frames(); ++t) {
      y[t] = x[t >= s ? t - s : 0];
    }
  }
  return out;
}

SyntheticDataset GenerateShift(const ShiftSpec& spec) {
  ValidateSpec(spec.base);
  if (spec.shift < 0 || spec.shift >= spec.base.seq_len) {
    throw ConfigError("shift must be in [0, T=" +
                      std::to_string(spec.base.seq_len) + "), got " +
                      std::to_string(spec.shift));
  }
  SyntheticDataset data = GenerateComposition(spec.base);
  for (auto* split : {&data.train, &data.test}) {
    for (auto& seq : *split) {
      seq.features = ShiftFeatures(seq.features, spec.shift);
    }
  }
  return data;
}

double FrameClassifierCeiling(const std::vector<Sequence>& data) {
  std::map<std::vector<float>, std::map<int, size_t>> counts;
  size_t total = 0;
  for (const auto& seq : data) {
    for (size_t t = 0; t < seq.labels.size(); ++t) {
      std::vector<float> key(seq.features.channels());
      for (size_t c = 0; c < key.size(); ++c) key[c] = seq.features.at(c, t);
      ++counts[key][seq.labels[t]];
      ++total;
    }
  }
  if (total == 0) return 0.0;
  size_t correct = 0;
  for (const auto& [key, by_label] : counts) {
    size_t best = 0;
    for (const auto& [label, n] : by_label) best = std::max(best, n);
    correct += best;
  }
  return 100.0 * static_cast<double>(correct) / static_cast<double>(total);
}

std::string FormatTransitions(const TransitionTable& table) {
  static const char* kNames[] = {"A", "B", "C"};
  std::ostringstream out;
  out << "# from to probability\n";
  for (int to = 0; to < 3; ++to) {
    out << "start " << kNames[to] << ' ' << table.start[to] << '\n';
  }
  for (int from = 0; from < 3; ++from) {
    for (int to = 0; to < 3; ++to) {
      out << kNames[from] << ' ' << kNames[to] << ' ' << table.next[from][to]
          << '\n';
    }
  }
  out << "# A expands to A1 A2 A3 in order\n";
  return out.str();
}

}  // namespace tcn::synth
