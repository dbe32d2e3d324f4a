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

#ifndef TCN_SYNTH_SYNTH_H_
#define TCN_SYNTH_SYNTH_H_

// Toy datasets for probing what temporal models capture: a Markov chain of
// high-level actions where action A is always the subaction sequence
// A1 -> A2 -> A3, and a variant whose features lag the labels by s frames.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "tcn/models/train.h"

namespace tcn::synth {

using Sequence = models::LabeledSequence<float>;

// Label ids.
enum SubAction : int { kA1 = 0, kA2 = 1, kA3 = 2, kB = 3, kC = 4 };
inline constexpr int kNumClasses = 5;
inline constexpr int kFeatureDim = 3;

// High-level actions (the Markov states).
enum class Action : int { kA = 0, kB = 1, kC = 2 };

std::vector<std::string> ClassNames();

struct CompositionSpec {
  int num_train = 50;
  int num_test = 10;
  int seq_len = 150;
  // Fixed duration in frames of each label, indexed by SubAction.
  std::array<int, kNumClasses> durations = {8, 8, 8, 12, 16};
  uint64_t seed = 0;
};

struct ShiftSpec {
  CompositionSpec base;
  int shift = 0;
};

// Row `from` (start, A, B, C) gives the probability of each next high-level
// action (A, B, C).
struct TransitionTable {
  std::array<double, 3> start;
  std::array<std::array<double, 3>, 3> next;
};

TransitionTable DefaultTransitions();

struct SyntheticDataset {
  std::vector<Sequence> train;
  std::vector<Sequence> test;
  TransitionTable transitions;
  std::vector<std::string> class_names;
};

// Feature vector (+1 on the high-level action's coordinate, -1 elsewhere).
std::array<float, kFeatureDim> FeatureFor(int label);

// Throws ConfigError when a duration is < 1 or > seq_len, or counts are
// negative.
SyntheticDataset GenerateComposition(const CompositionSpec& spec);

// Same draws as GenerateComposition(spec.base), with features delayed:
// x'_t = x_{max(t - s, 0)}. Throws ConfigError unless 0 <= s < seq_len.
SyntheticDataset GenerateShift(const ShiftSpec& spec);

nn::SeqTensor<float> ShiftFeatures(const nn::SeqTensor<float>& features,
                                   int shift);

// One labeled sequence of length `seq_len` drawn from `rng`.
Sequence SampleSequence(const CompositionSpec& spec,
                        const TransitionTable& transitions, Rng& rng);

// Accuracy (percent) of the best frame-wise classifier: map each distinct
// feature vector to its most frequent label, counted by brute force over
// `data`, then score that map on `data`.
double FrameClassifierCeiling(const std::vector<Sequence>& data);

// "from to probability" lines, "start" as the initial row.
std::string FormatTransitions(const TransitionTable& table);

}  // namespace tcn::synth

#endif  // TCN_SYNTH_SYNTH_H_
