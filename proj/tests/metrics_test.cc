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

#include "tcn/metrics/metrics.h"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "tcn/error.h"
#include "tcn/random.h"
#include "testing/oracles.h"

namespace tcn::metrics {
namespace {

constexpr int kA = 0;
constexpr int kB = 1;

Segment Seg(int c, size_t start, size_t end) { return {c, start, end, {}}; }
Segment Scored(int c, size_t start, size_t end, double conf) {
  return {c, start, end, conf};
}

TEST(SegmentsTest, RunsOfEqualLabels) {
  const std::vector<int> labels = {0, 0, 1, 1, 0};
  EXPECT_EQ(LabelsToSegments(labels),
            (std::vector<Segment>{Seg(0, 0, 2), Seg(1, 2, 4), Seg(0, 4, 5)}));
}

TEST(SegmentsTest, SingleFrame) {
  const std::vector<int> labels = {2};
  EXPECT_EQ(LabelsToSegments(labels), (std::vector<Segment>{Seg(2, 0, 1)}));
}

TEST(SegmentsTest, RoundTripOnRandomSequences) {
  Rng rng(10);
  for (int i = 0; i < 1000; ++i) {
    const size_t frames = 1 + rng.UniformIndex(40);
    const auto labels = testing::RandomLabels(
        rng, frames, 1 + static_cast<int>(rng.UniformIndex(8)), 4);
    const auto segments = LabelsToSegments(labels);
    ASSERT_EQ(SegmentsToLabels(segments), labels);
  }
}

TEST(AccuracyTest, Cases) {
  const std::vector<int> a = {0, 1, 1, 0};
  const std::vector<int> b = {0, 1, 0, 0};
  const std::vector<int> c = {1, 0, 0, 1};
  EXPECT_EQ(FrameAccuracy(a, a), 100.0);
  EXPECT_EQ(FrameAccuracy(a, c), 0.0);
  EXPECT_EQ(FrameAccuracy(a, b), 75.0);
  EXPECT_THROW(FrameAccuracy(a, std::vector<int>{0}), DataError);
}

TEST(IouTest, Cases) {
  EXPECT_EQ(Iou(Seg(0, 3, 9), Seg(1, 3, 9)), 1.0);
  EXPECT_EQ(Iou(Seg(0, 0, 4), Seg(0, 4, 8)), 0.0);
  EXPECT_DOUBLE_EQ(Iou(Seg(0, 0, 10), Seg(0, 5, 15)), 1.0 / 3.0);
}

TEST(F1Test, IdenticalSegmentsScoreHundred) {
  const std::vector<Segment> s = {Seg(kA, 0, 5), Seg(kB, 5, 9), Seg(kA, 9, 12)};
  for (double tau : {0.1, 0.5, 1.0}) EXPECT_EQ(F1AtK(s, s, tau), 100.0);
}

TEST(F1Test, WorkedOverSegmentationCase) {
  const std::vector<Segment> truth = {Seg(kA, 0, 10), Seg(kB, 10, 20)};
  const std::vector<Segment> pred = {Seg(kA, 0, 5), Seg(kA, 5, 10),
                                     Seg(kB, 10, 20)};
  const auto counts = MatchSegments(pred, truth, 0.5);
  EXPECT_EQ(counts.true_positives, 2u);
  EXPECT_EQ(counts.false_positives, 1u);
  EXPECT_EQ(counts.false_negatives, 0u);
  EXPECT_EQ(F1AtK(pred, truth, 0.5), 80.0);
}

TEST(F1Test, EmptyPredictionScoresZero) {
  const std::vector<Segment> truth = {Seg(kA, 0, 10)};
  EXPECT_EQ(F1AtK({}, truth, 0.1), 0.0);
}

TEST(F1Test, AugmentingPathFindsMaximumMatching) {
  // Greedy-by-IoU would give truth 0 to pred 0 and leave pred 1 unmatched;
  // the maximum assigns pred 0 -> truth 1 and pred 1 -> truth 0.
  const std::vector<Segment> truth = {Seg(kA, 0, 10), Seg(kA, 6, 16)};
  const std::vector<Segment> pred = {Seg(kA, 3, 13), Seg(kA, 0, 7)};
  EXPECT_EQ(MatchSegments(pred, truth, 0.4).true_positives,
            testing::BruteForceMaxMatches(pred, truth, 0.4));
  EXPECT_EQ(MatchSegments(pred, truth, 0.4).true_positives, 2u);
}

TEST(F1Test, IgnoredClassesDropOut) {
  const std::vector<Segment> truth = {Seg(kA, 0, 10), Seg(kB, 10, 20)};
  const std::vector<Segment> pred = {Seg(kA, 0, 10), Seg(kA, 10, 20)};
  // Truth {A} vs pred {A, A}: TP 1, FP 1, FN 0.
  EXPECT_NEAR(F1AtK(pred, truth, 0.5, {kB}), 200.0 / 3.0, 1e-12);
  EXPECT_NEAR(F1AtK(pred, truth, 0.5), 50.0, 1e-12);
}

TEST(F1Test, InvalidTauIsConfigError) {
  const std::vector<Segment> s = {Seg(kA, 0, 1)};
  EXPECT_THROW(F1AtK(s, s, 0.0), ConfigError);
  EXPECT_THROW(F1AtK(s, s, 1.5), ConfigError);
}

TEST(F1Test, MatchesExhaustiveOracle) {
  Rng rng(2024);
  for (int i = 0; i < 1000; ++i) {
    const int classes = 1 + static_cast<int>(rng.UniformIndex(3));
    const auto pred = testing::RandomSegments(
        rng, static_cast<int>(rng.UniformIndex(7)), classes, 40);
    const auto truth = testing::RandomSegments(
        rng, static_cast<int>(rng.UniformIndex(7)), classes, 40);
    for (double tau : {0.1, 0.25, 0.5}) {
      ASSERT_EQ(F1AtK(pred, truth, tau), testing::BruteForceF1(pred, truth, tau))
          << "case " << i << " tau " << tau;
    }
  }
}

TEST(F1Test, ShiftInvariantWhileOverlapHolds) {
  const std::vector<Segment> truth = {Seg(kA, 0, 20), Seg(kB, 20, 40)};
  for (size_t delta = 0; delta <= 6; ++delta) {
    const std::vector<Segment> pred = {Seg(kA, 0 + delta, 20 + delta),
                                       Seg(kB, 20 + delta, 40)};
    // IoU >= 14/26 > 0.5 for every delta here.
    EXPECT_EQ(F1AtK(pred, truth, 0.5), 100.0) << delta;
  }
}

TEST(F1Test, SplittingACorrectSegmentLowersScore) {
  const std::vector<Segment> truth = {Seg(kA, 0, 20), Seg(kB, 20, 30)};
  const std::vector<Segment> split = {Seg(kA, 0, 12), Seg(kA, 12, 20),
                                      Seg(kB, 20, 30)};
  EXPECT_LT(F1AtK(split, truth, 0.1), F1AtK(truth, truth, 0.1));
}

TEST(F1Test, MonotoneInTauAndBounded) {
  Rng rng(8);
  for (int i = 0; i < 200; ++i) {
    const auto pred = testing::RandomSegments(rng, 5, 2, 30);
    const auto truth = testing::RandomSegments(rng, 4, 2, 30);
    double last = 100.0;
    for (double tau : {0.05, 0.1, 0.25, 0.5, 0.75, 1.0}) {
      const double f1 = F1AtK(pred, truth, tau);
      EXPECT_GE(f1, 0.0);
      EXPECT_LE(f1, last);
      last = f1;
    }
  }
}

TEST(EditTest, Cases) {
  const std::vector<Segment> ab = {Seg(kA, 0, 4), Seg(kB, 4, 8)};
  const std::vector<Segment> aba = {Seg(kA, 0, 2), Seg(kB, 2, 5),
                                    Seg(kA, 5, 8)};
  EXPECT_EQ(EditScore(ab, ab), 100.0);
  EXPECT_NEAR(EditScore(aba, ab), 100.0 * (1.0 - 1.0 / 3.0), 1e-12);
  EXPECT_EQ(EditScore({}, ab), 0.0);
  EXPECT_EQ(EditScore({}, {}), 100.0);
}

TEST(EditTest, MatchesDynamicProgrammingOracle) {
  Rng rng(99);
  for (int i = 0; i < 1000; ++i) {
    std::vector<int> a(rng.UniformIndex(9)), b(rng.UniformIndex(9));
    for (int& v : a) v = static_cast<int>(rng.UniformIndex(3));
    for (int& v : b) v = static_cast<int>(rng.UniformIndex(3));
    ASSERT_EQ(LevenshteinDistance(a, b), testing::DpLevenshtein(a, b));
  }
}

TEST(ResolutionTest, DoublingFramesKeepsSegmentalScores) {
  Rng rng(31);
  for (int i = 0; i < 200; ++i) {
    const auto pred = testing::RandomLabels(rng, 30, 6, 3);
    const auto truth = testing::RandomLabels(rng, 30, 5, 3);
    std::vector<int> pred2, truth2;
    for (size_t t = 0; t < 30; ++t) {
      pred2.insert(pred2.end(), 2, pred[t]);
      truth2.insert(truth2.end(), 2, truth[t]);
    }
    const auto p1 = LabelsToSegments(pred), t1 = LabelsToSegments(truth);
    const auto p2 = LabelsToSegments(pred2), t2 = LabelsToSegments(truth2);
    for (double tau : {0.1, 0.25, 0.5}) {
      EXPECT_EQ(F1AtK(p1, t1, tau), F1AtK(p2, t2, tau));
    }
    EXPECT_EQ(EditScore(p1, t1), EditScore(p2, t2));
  }
}

TEST(DetectionTest, MidpointIsMeanFrameIndex) {
  EXPECT_EQ(Midpoint(Seg(kA, 4, 6)), 4.5);
  EXPECT_EQ(Midpoint(Seg(kA, 0, 1)), 0.0);
}

TEST(DetectionTest, PerfectPredictionsScoreHundred) {
  const std::vector<Segment> truth = {Seg(kA, 0, 5), Seg(kB, 5, 9)};
  const std::vector<Segment> pred = {Scored(kA, 0, 5, 1.0),
                                     Scored(kB, 5, 9, 1.0)};
  EXPECT_EQ(MeanAveragePrecision(pred, truth, DetectionCriterion::Midpoint()).map,
            100.0);
  EXPECT_EQ(
      MeanAveragePrecision(pred, truth, DetectionCriterion::IouAt(0.5)).map,
      100.0);
}

TEST(DetectionTest, ShortPredictionAtTheMidpoint) {
  const std::vector<Segment> truth = {Seg(kA, 0, 10)};
  const std::vector<Segment> pred = {Scored(kA, 4, 6, 0.9)};
  EXPECT_EQ(MeanAveragePrecision(pred, truth, DetectionCriterion::Midpoint()).map,
            100.0);
}

TEST(DetectionTest, ConfidentFalsePositiveHalvesPrecision) {
  // Ranked: FP (p=0, r=0), then TP (p=1/2, r=1): the envelope gives 0.5.
  const std::vector<Segment> truth = {Seg(kA, 0, 10)};
  const std::vector<Segment> pred = {Scored(kA, 20, 30, 0.9),
                                     Scored(kA, 0, 10, 0.5)};
  EXPECT_DOUBLE_EQ(
      AveragePrecision(pred, truth, DetectionCriterion::Midpoint()), 0.5);
}

TEST(DetectionTest, MissingConfidenceIsDataError) {
  const std::vector<Segment> truth = {Seg(kA, 0, 10)};
  const std::vector<Segment> pred = {Seg(kA, 0, 10)};
  EXPECT_THROW(MeanAveragePrecision(pred, truth, DetectionCriterion::Midpoint()),
               DataError);
}

TEST(DetectionTest, SequencesNeverMatchAcrossEachOther) {
  const std::vector<std::vector<Segment>> truth = {{Seg(kA, 0, 10)}, {}};
  const std::vector<std::vector<Segment>> pred = {{}, {Scored(kA, 0, 10, 1.0)}};
  EXPECT_EQ(MeanAveragePrecision(std::span(pred), std::span(truth),
                                 DetectionCriterion::IouAt(0.1))
                .map,
            0.0);
}

TEST(ConfidenceTest, Policies) {
  nn::SeqTensor<float> probs(2, 4, 0.0f);
  for (size_t t = 0; t < 4; ++t) probs.at(1, t) = 0.7f;
  probs.at(0, 0) = 0.2f;
  probs.at(0, 1) = 0.8f;
  const Segment s0 = Seg(0, 0, 2), s1 = Seg(1, 0, 4);
  EXPECT_NEAR(SegmentConfidence(probs, s1, ConfidencePolicy::kMean), 0.7, 1e-6);
  EXPECT_NEAR(SegmentConfidence(probs, s1, ConfidencePolicy::kMax), 0.7, 1e-6);
  EXPECT_NEAR(SegmentConfidence(probs, s0, ConfidencePolicy::kMean), 0.5, 1e-6);
  EXPECT_NEAR(SegmentConfidence(probs, s0, ConfidencePolicy::kMax), 0.8, 1e-6);
}

TEST(ConfidenceTest, MeanNeverExceedsMax) {
  Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    const size_t frames = 1 + rng.UniformIndex(20);
    nn::SeqTensor<float> probs(3, frames);
    for (float& v : probs.data()) v = static_cast<float>(rng.Uniform01());
    const size_t start = rng.UniformIndex(frames);
    const size_t end = start + 1 + rng.UniformIndex(frames - start);
    const Segment s = Seg(static_cast<int>(rng.UniformIndex(3)), start, end);
    ASSERT_LE(SegmentConfidence(probs, s, ConfidencePolicy::kMean),
              SegmentConfidence(probs, s, ConfidencePolicy::kMax));
  }
}

}  // namespace
}  // namespace tcn::metrics
