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

#ifndef TCN_METRICS_METRICS_H_
#define TCN_METRICS_METRICS_H_

// Frame-wise and segmental scores for temporal action segmentation and
// detection. All scores are percentages in [0, 100].

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "tcn/nn/seq_tensor.h"

namespace tcn::metrics {

// Frames [start, end) labeled class_id.
struct Segment {
  int class_id = 0;
  size_t start = 0;
  size_t end = 0;
  std::optional<double> confidence;

  size_t length() const { return end - start; }
  bool operator==(const Segment&) const = default;
};

using ClassSet = std::set<int>;

// Maximal runs of equal labels, in temporal order.
std::vector<Segment> LabelsToSegments(std::span<const int> labels);
// Inverse of LabelsToSegments for a tiling of [0, T).
std::vector<int> SegmentsToLabels(std::span<const Segment> segments);

// 100 * matching frames / T. Throws DataError on a length mismatch; 0 for
// two empty sequences.
double FrameAccuracy(std::span<const int> pred, std::span<const int> truth);

// |a intersect b| / |a union b| over frame intervals (class ignored).
double Iou(const Segment& a, const Segment& b);

struct MatchCounts {
  size_t true_positives = 0;
  size_t false_positives = 0;
  size_t false_negatives = 0;
};

// Segmental matching at IoU threshold tau. Predictions are visited in
// temporal order; each takes the unmatched same-class truth with the highest
// IoU >= tau (ties to the earlier truth). When every such truth is taken,
// an augmenting path re-routes earlier predictions to their next-best
// eligible truths if that frees one, so the number of true positives is the
// maximum achievable and each truth is matched at most once. Segments of
// ignored classes take no part in the counts.
//
// Throws ConfigError unless 0 < tau <= 1.
MatchCounts MatchSegments(std::span<const Segment> pred,
                          std::span<const Segment> truth, double tau,
                          const ClassSet& ignore_classes = {});

// 100 * 2PR/(P+R) from counts micro-summed over classes; 0 when P+R = 0.
double F1FromCounts(const MatchCounts& counts);

double F1AtK(std::span<const Segment> pred, std::span<const Segment> truth,
             double tau, const ClassSet& ignore_classes = {});

// Unit-cost Levenshtein distance between class sequences.
size_t LevenshteinDistance(std::span<const int> a, std::span<const int> b);

// 100 * (1 - Levenshtein / max(|pred|, |truth|)) over segment class
// sequences with ignored classes removed; 100 when both are empty.
double EditScore(std::span<const Segment> pred, std::span<const Segment> truth,
                 const ClassSet& ignore_classes = {});

struct DetectionCriterion {
  enum class Kind { kMidpoint, kIou };
  Kind kind = Kind::kMidpoint;
  double tau = 0.5;  // only for kIou

  static DetectionCriterion Midpoint() { return {Kind::kMidpoint, 0.0}; }
  static DetectionCriterion IouAt(double t) { return {Kind::kIou, t}; }
};

// Midpoint of a segment, (start + end - 1) / 2, the mean of its frame indices.
double Midpoint(const Segment& s);

// Average precision (fraction in [0, 1]) for one class: predictions ranked by
// descending confidence (ties by start frame), each greedily matched to an
// unmatched truth -- for kIou the one with the highest IoU >= tau, for
// kMidpoint the earliest containing the prediction's midpoint. AP is the area
// under the precision envelope (all-points interpolation). 0 when there are
// no truths.
double AveragePrecision(std::span<const Segment> pred,
                        std::span<const Segment> truth,
                        const DetectionCriterion& criterion);

struct DetectionScore {
  double map = 0.0;                      // percent
  std::vector<std::pair<int, double>> per_class;  // (class, AP percent)
};

// Mean AP over the classes present in `truth` (minus ignored classes).
// Throws DataError when a prediction lacks a confidence.
DetectionScore MeanAveragePrecision(std::span<const Segment> pred,
                                    std::span<const Segment> truth,
                                    const DetectionCriterion& criterion,
                                    const ClassSet& ignore_classes = {});

// Same, with predictions and truths pooled over several sequences; segments
// of different sequences never match.
DetectionScore MeanAveragePrecision(
    std::span<const std::vector<Segment>> pred,
    std::span<const std::vector<Segment>> truth,
    const DetectionCriterion& criterion, const ClassSet& ignore_classes = {});

enum class ConfidencePolicy { kMean, kMax };

// Mean or max of probs(seg.class_id, t) over the segment's frames.
double SegmentConfidence(const nn::SeqTensor<float>& probs, const Segment& seg,
                         ConfidencePolicy policy);

// Segments of `labels` with confidences from `probs` under `policy`.
std::vector<Segment> ScoredSegments(std::span<const int> labels,
                                    const nn::SeqTensor<float>& probs,
                                    ConfidencePolicy policy);

}  // namespace tcn::metrics

#endif  // TCN_METRICS_METRICS_H_
