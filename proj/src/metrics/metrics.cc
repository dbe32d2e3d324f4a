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

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "tcn/error.h"

namespace tcn::metrics {
namespace {

std::vector<Segment> WithoutIgnored(std::span<const Segment> segments,
                                    const ClassSet& ignore) {
  std::vector<Segment> out;
  for (const auto& s : segments) {
    if (!ignore.count(s.class_id)) out.push_back(s);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Segment& a, const Segment& b) {
                     return a.start < b.start;
                   });
  return out;
}

// Kuhn's augmenting-path step: tries to give pred `i` a truth, moving
// earlier assignments along their own candidate lists if needed.
bool Augment(size_t i, const std::vector<std::vector<size_t>>& candidates,
             std::vector<int>& owner, std::vector<char>& visited) {
  for (size_t j : candidates[i]) {
    if (visited[j]) continue;
    visited[j] = 1;
    if (owner[j] < 0 ||
        Augment(static_cast<size_t>(owner[j]), candidates, owner, visited)) {
      owner[j] = static_cast<int>(i);
      return true;
    }
  }
  return false;
}

struct Tagged {
  Segment seg;
  size_t sequence = 0;
};

double AveragePrecisionTagged(std::vector<Tagged> pred,
                              const std::vector<Tagged>& truth,
                              const DetectionCriterion& criterion) {
  if (truth.empty()) return 0.0;
  std::stable_sort(pred.begin(), pred.end(),
                   [](const Tagged& a, const Tagged& b) {
                     double ca = a.seg.confidence.value_or(0.0);
                     double cb = b.seg.confidence.value_or(0.0);
                     if (ca != cb) return ca > cb;
                     if (a.sequence != b.sequence) return a.sequence < b.sequence;
                     return a.seg.start < b.seg.start;
                   });
  std::vector<char> used(truth.size(), 0);
  std::vector<double> precision;
  std::vector<double> recall;
  size_t tp = 0;
  for (size_t i = 0; i < pred.size(); ++i) {
    const Tagged& p = pred[i];
    int hit = -1;
    if (criterion.kind == DetectionCriterion::Kind::kIou) {
      double best = -1.0;
      for (size_t j = 0; j < truth.size(); ++j) {
        if (used[j] || truth[j].sequence != p.sequence) continue;
        double v = Iou(p.seg, truth[j].seg);
        if (v > best) {
          best = v;
          hit = static_cast<int>(j);
        }
      }
      if (hit >= 0 && best < criterion.tau) hit = -1;
    } else {
      const double mid = Midpoint(p.seg);
      for (size_t j = 0; j < truth.size(); ++j) {
        if (used[j] || truth[j].sequence != p.sequence) continue;
        const auto& g = truth[j].seg;
        if (static_cast<double>(g.start) <= mid &&
            mid <= static_cast<double>(g.end) - 1.0) {
          hit = static_cast<int>(j);
          break;
        }
      }
    }
    if (hit >= 0) {
      used[hit] = 1;
      ++tp;
    }
    precision.push_back(static_cast<double>(tp) / static_cast<double>(i + 1));
    recall.push_back(static_cast<double>(tp) /
                     static_cast<double>(truth.size()));
  }
  for (size_t i = precision.size(); i-- > 1;) {
    precision[i - 1] = std::max(precision[i - 1], precision[i]);
  }
  double ap = 0.0;
  double prev_recall = 0.0;
  for (size_t i = 0; i < precision.size(); ++i) {
    ap += (recall[i] - prev_recall) * precision[i];
    prev_recall = recall[i];
  }
  return ap;
}

}  // namespace

std::vector<Segment> LabelsToSegments(std::span<const int> labels) {
  std::vector<Segment> segments;
  size_t start = 0;
  for (size_t t = 1; t <= labels.size(); ++t) {
    if (t == labels.size() || labels[t] != labels[start]) {
      segments.push_back(Segment{labels[start], start, t, std::nullopt});
      start = t;
    }
  }
  return segments;
}

std::vector<int> SegmentsToLabels(std::span<const Segment> segments) {
  std::vector<int> labels;
  for (const auto& s : segments) {
    if (s.start != labels.size() || s.end <= s.start) {
      throw DataError("segments do not tile [0, T) in order");
    }
    labels.insert(labels.end(), s.length(), s.class_id);
  }
  return labels;
}

double FrameAccuracy(std::span<const int> pred, std::span<const int> truth) {
  if (pred.size() != truth.size()) {
    throw DataError("frame accuracy: prediction has " +
                    std::to_string(pred.size()) + " frames, truth " +
                    std::to_string(truth.size()));
  }
  if (truth.empty()) return 0.0;
  size_t hits = 0;
  for (size_t t = 0; t < truth.size(); ++t) hits += pred[t] == truth[t];
  return 100.0 * static_cast<double>(hits) / static_cast<double>(truth.size());
}

double Iou(const Segment& a, const Segment& b) {
  const size_t lo = std::max(a.start, b.start);
  const size_t hi = std::min(a.end, b.end);
  const size_t inter = hi > lo ? hi - lo : 0;
  const size_t uni = a.length() + b.length() - inter;
  if (uni == 0) return 0.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

MatchCounts MatchSegments(std::span<const Segment> pred,
                          std::span<const Segment> truth, double tau,
                          const ClassSet& ignore_classes) {
  if (!(tau > 0.0 && tau <= 1.0)) {
    throw ConfigError("IoU threshold must be in (0, 1], got " +
                      std::to_string(tau));
  }
  const std::vector<Segment> p = WithoutIgnored(pred, ignore_classes);
  const std::vector<Segment> g = WithoutIgnored(truth, ignore_classes);

  // Eligible truths of each prediction, best IoU first, earlier on ties.
  std::vector<std::vector<size_t>> candidates(p.size());
  for (size_t i = 0; i < p.size(); ++i) {
    std::vector<std::pair<double, size_t>> scored;
    for (size_t j = 0; j < g.size(); ++j) {
      if (g[j].class_id != p[i].class_id) continue;
      const double v = Iou(p[i], g[j]);
      if (v >= tau) scored.emplace_back(v, j);
    }
    std::stable_sort(scored.begin(), scored.end(),
                     [](const auto& a, const auto& b) {
                       return a.first > b.first;
                     });
    for (const auto& [v, j] : scored) candidates[i].push_back(j);
  }

  std::vector<int> owner(g.size(), -1);
  size_t tp = 0;
  for (size_t i = 0; i < p.size(); ++i) {
    bool matched = false;
    for (size_t j : candidates[i]) {
      if (owner[j] < 0) {
        owner[j] = static_cast<int>(i);
        matched = true;
        break;
      }
    }
    if (!matched) {
      std::vector<char> visited(g.size(), 0);
      matched = Augment(i, candidates, owner, visited);
    }
    tp += matched;
  }
  return MatchCounts{tp, p.size() - tp, g.size() - tp};
}

double F1FromCounts(const MatchCounts& c) {
  // 2PR / (P + R) == 2TP / (2TP + FP + FN) whenever TP > 0.
  if (c.true_positives == 0) return 0.0;
  const double tp2 = 2.0 * static_cast<double>(c.true_positives);
  return 100.0 * tp2 /
         (tp2 + static_cast<double>(c.false_positives + c.false_negatives));
}

double F1AtK(std::span<const Segment> pred, std::span<const Segment> truth,
             double tau, const ClassSet& ignore_classes) {
  return F1FromCounts(MatchSegments(pred, truth, tau, ignore_classes));
}

size_t LevenshteinDistance(std::span<const int> a, std::span<const int> b) {
  std::vector<size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), size_t{0});
  for (size_t i = 1; i <= a.size(); ++i) {
    size_t diag = row[0];
    row[0] = i;
    for (size_t j = 1; j <= b.size(); ++j) {
      const size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1,
                         diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

double EditScore(std::span<const Segment> pred, std::span<const Segment> truth,
                 const ClassSet& ignore_classes) {
  std::vector<int> a;
  std::vector<int> b;
  for (const auto& s : WithoutIgnored(pred, ignore_classes)) {
    a.push_back(s.class_id);
  }
  for (const auto& s : WithoutIgnored(truth, ignore_classes)) {
    b.push_back(s.class_id);
  }
  const size_t longest = std::max(a.size(), b.size());
  if (longest == 0) return 100.0;
  const double dist = static_cast<double>(LevenshteinDistance(a, b));
  return 100.0 * (1.0 - dist / static_cast<double>(longest));
}

double Midpoint(const Segment& s) {
  return (static_cast<double>(s.start) + static_cast<double>(s.end) - 1.0) /
         2.0;
}

double AveragePrecision(std::span<const Segment> pred,
                        std::span<const Segment> truth,
                        const DetectionCriterion& criterion) {
  std::vector<Tagged> p;
  std::vector<Tagged> g;
  for (const auto& s : pred) p.push_back({s, 0});
  for (const auto& s : truth) g.push_back({s, 0});
  return AveragePrecisionTagged(std::move(p), g, criterion);
}

DetectionScore MeanAveragePrecision(std::span<const Segment> pred,
                                    std::span<const Segment> truth,
                                    const DetectionCriterion& criterion,
                                    const ClassSet& ignore_classes) {
  std::vector<std::vector<Segment>> p{{pred.begin(), pred.end()}};
  std::vector<std::vector<Segment>> g{{truth.begin(), truth.end()}};
  return MeanAveragePrecision(std::span<const std::vector<Segment>>(p),
                              std::span<const std::vector<Segment>>(g),
                              criterion, ignore_classes);
}

DetectionScore MeanAveragePrecision(
    std::span<const std::vector<Segment>> pred,
    std::span<const std::vector<Segment>> truth,
    const DetectionCriterion& criterion, const ClassSet& ignore_classes) {
  if (pred.size() != truth.size()) {
    throw DataError("mAP: prediction and truth sequence counts differ");
  }
  if (criterion.kind == DetectionCriterion::Kind::kIou &&
      !(criterion.tau > 0.0 && criterion.tau <= 1.0)) {
    throw ConfigError("IoU threshold must be in (0, 1]");
  }
  std::map<int, std::vector<Tagged>> pred_by_class;
  std::map<int, std::vector<Tagged>> truth_by_class;
  for (size_t n = 0; n < pred.size(); ++n) {
    for (const auto& s : pred[n]) {
      if (!s.confidence) {
        throw DataError("mAP: predicted segment [" + std::to_string(s.start) +
                        ", " + std::to_string(s.end) +
                        ") has no confidence");
      }
      if (!ignore_classes.count(s.class_id)) {
        pred_by_class[s.class_id].push_back({s, n});
      }
    }
    for (const auto& s : truth[n]) {
      if (!ignore_classes.count(s.class_id)) {
        truth_by_class[s.class_id].push_back({s, n});
      }
    }
  }
  DetectionScore score;
  if (truth_by_class.empty()) return score;
  double sum = 0.0;
  for (const auto& [cls, g] : truth_by_class) {
    const double ap =
        AveragePrecisionTagged(pred_by_class[cls], g, criterion) * 100.0;
    score.per_class.emplace_back(cls, ap);
    sum += ap;
  }
  score.map = sum / static_cast<double>(truth_by_class.size());
  return score;
}

double SegmentConfidence(const nn::SeqTensor<float>& probs, const Segment& seg,
                         ConfidencePolicy policy) {
  if (seg.end <= seg.start || seg.end > probs.frames() || seg.class_id < 0 ||
      static_cast<size_t>(seg.class_id) >= probs.channels()) {
    throw DataError("segment outside the probability array");
  }
  auto row = probs.channel(static_cast<size_t>(seg.class_id));
  const auto [lo, hi] =
      std::minmax_element(row.begin() + seg.start, row.begin() + seg.end);
  if (policy == ConfidencePolicy::kMax) return *hi;
  double sum = 0.0;
  for (size_t t = seg.start; t < seg.end; ++t) sum += row[t];
  // Rounding in the sum must not push the mean outside [min, max].
  return std::clamp(sum / static_cast<double>(seg.length()),
                    static_cast<double>(*lo), static_cast<double>(*hi));
}

std::vector<Segment> ScoredSegments(std::span<const int> labels,
                                    const nn::SeqTensor<float>& probs,
                                    ConfidencePolicy policy) {
  if (labels.size() != probs.frames()) {
    throw DataError("labels and probabilities differ in length");
  }
  std::vector<Segment> segments = LabelsToSegments(labels);
  for (auto& s : segments) s.confidence = SegmentConfidence(probs, s, policy);
  return segments;
}

}  // namespace tcn::metrics
