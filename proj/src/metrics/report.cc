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

#include "tcn/metrics/report.h"

#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "tcn/error.h"

namespace tcn::metrics {
namespace {

std::vector<Segment> OfClass(const std::vector<Segment>& segments, int cls) {
  std::vector<Segment> out;
  for (const auto& s : segments) {
    if (s.class_id == cls) out.push_back(s);
  }
  return out;
}

DetectionReport Detect(std::span<const EvalSequence> sequences,
                       const EvalOptions& options, ConfidencePolicy policy) {
  std::vector<std::vector<Segment>> pred;
  std::vector<std::vector<Segment>> truth;
  for (const auto& seq : sequences) {
    pred.push_back(ScoredSegments(seq.pred, *seq.probs, policy));
    truth.push_back(LabelsToSegments(seq.truth));
  }
  DetectionReport report;
  auto mid = MeanAveragePrecision(std::span<const std::vector<Segment>>(pred),
                                  std::span<const std::vector<Segment>>(truth),
                                  DetectionCriterion::Midpoint(),
                                  options.ignore_classes);
  report.map_mid = mid.map;
  for (const auto& [cls, ap] : mid.per_class) report.ap_mid_per_class[cls] = ap;
  for (double tau : options.taus) {
    auto k = MeanAveragePrecision(std::span<const std::vector<Segment>>(pred),
                                  std::span<const std::vector<Segment>>(truth),
                                  DetectionCriterion::IouAt(tau),
                                  options.ignore_classes);
    report.map_iou.emplace_back(tau, k.map);
  }
  return report;
}

void AppendDetection(std::vector<std::pair<std::string, double>>& out,
                     const DetectionReport& d, const std::string& policy) {
  out.emplace_back("mAP@mid[" + policy + "]", d.map_mid);
  for (const auto& [tau, v] : d.map_iou) {
    out.emplace_back("mAP@" + TauLabel(tau) + "[" + policy + "]", v);
  }
}

}  // namespace

std::string TauLabel(double tau) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", tau * 100.0);
  return buf;
}

EvalReport Evaluate(std::span<const EvalSequence> sequences,
                    const EvalOptions& options) {
  for (double tau : options.taus) {
    if (!(tau > 0.0 && tau <= 1.0)) {
      throw ConfigError("IoU threshold must be in (0, 1], got " +
                        std::to_string(tau));
    }
  }
  EvalReport report;
  report.num_sequences = sequences.size();
  if (sequences.empty()) return report;

  size_t with_probs = 0;
  std::map<int, std::pair<size_t, size_t>> class_hits;  // (hits, frames)
  std::map<int, std::vector<MatchCounts>> class_counts;
  std::vector<double> f1_sum(options.taus.size(), 0.0);
  double acc_sum = 0.0;
  double edit_sum = 0.0;
  for (const auto& seq : sequences) {
    if (seq.pred.size() != seq.truth.size()) {
      throw DataError("sequence '" + seq.name + "': prediction has " +
                      std::to_string(seq.pred.size()) + " frames, truth " +
                      std::to_string(seq.truth.size()));
    }
    if (seq.probs) {
      ++with_probs;
      if (seq.probs->frames() != seq.truth.size()) {
        throw DataError("sequence '" + seq.name +
                        "': probabilities have the wrong frame count");
      }
    }
    report.num_frames += seq.truth.size();
    acc_sum += FrameAccuracy(seq.pred, seq.truth);
    const auto pred = LabelsToSegments(seq.pred);
    const auto truth = LabelsToSegments(seq.truth);
    edit_sum += EditScore(pred, truth, options.ignore_classes);
    for (size_t k = 0; k < options.taus.size(); ++k) {
      f1_sum[k] += F1AtK(pred, truth, options.taus[k], options.ignore_classes);
    }
    for (size_t t = 0; t < seq.truth.size(); ++t) {
      auto& [hits, frames] = class_hits[seq.truth[t]];
      hits += seq.pred[t] == seq.truth[t];
      ++frames;
    }
    ClassSet classes;
    for (const auto& s : pred) classes.insert(s.class_id);
    for (const auto& s : truth) classes.insert(s.class_id);
    for (int cls : classes) {
      if (options.ignore_classes.count(cls)) continue;
      auto& counts = class_counts[cls];
      counts.resize(options.taus.size());
      const auto p = OfClass(pred, cls);
      const auto g = OfClass(truth, cls);
      for (size_t k = 0; k < options.taus.size(); ++k) {
        MatchCounts c = MatchSegments(p, g, options.taus[k]);
        counts[k].true_positives += c.true_positives;
        counts[k].false_positives += c.false_positives;
        counts[k].false_negatives += c.false_negatives;
      }
    }
  }
  const auto n = static_cast<double>(sequences.size());
  report.accuracy = acc_sum / n;
  report.edit = edit_sum / n;
  for (size_t k = 0; k < options.taus.size(); ++k) {
    report.f1.emplace_back(options.taus[k], f1_sum[k] / n);
  }
  for (const auto& [cls, hf] : class_hits) {
    report.class_accuracy[cls] = 100.0 * static_cast<double>(hf.first) /
                                 static_cast<double>(hf.second);
  }
  for (const auto& [cls, counts] : class_counts) {
    for (size_t k = 0; k < counts.size(); ++k) {
      report.class_f1[cls].emplace_back(options.taus[k],
                                        F1FromCounts(counts[k]));
    }
  }
  if (with_probs != 0 && with_probs != sequences.size()) {
    throw DataError("probabilities given for only " +
                    std::to_string(with_probs) + " of " +
                    std::to_string(sequences.size()) + " sequences");
  }
  if (with_probs == sequences.size()) {
    report.detection_mean = Detect(sequences, options, ConfidencePolicy::kMean);
    report.detection_max = Detect(sequences, options, ConfidencePolicy::kMax);
  }
  return report;
}

std::vector<std::pair<std::string, double>> FlattenReport(
    const EvalReport& report) {
  std::vector<std::pair<std::string, double>> out;
  out.emplace_back("accuracy", report.accuracy);
  out.emplace_back("edit", report.edit);
  for (const auto& [tau, v] : report.f1) {
    out.emplace_back("F1@" + TauLabel(tau), v);
  }
  if (report.detection_mean) {
    AppendDetection(out, *report.detection_mean, "mean");
  }
  if (report.detection_max) AppendDetection(out, *report.detection_max, "max");
  for (const auto& [cls, v] : report.class_accuracy) {
    out.emplace_back("class." + std::to_string(cls) + ".accuracy", v);
  }
  for (const auto& [cls, scores] : report.class_f1) {
    for (const auto& [tau, v] : scores) {
      out.emplace_back("class." + std::to_string(cls) + ".F1@" + TauLabel(tau),
                       v);
    }
  }
  for (const auto* d : {&report.detection_mean, &report.detection_max}) {
    if (!*d) continue;
    const std::string policy = d == &report.detection_mean ? "mean" : "max";
    for (const auto& [cls, v] : (*d)->ap_mid_per_class) {
      out.emplace_back(
          "class." + std::to_string(cls) + ".AP@mid[" + policy + "]", v);
    }
  }
  return out;
}

std::optional<double> ReportValue(const EvalReport& report,
                                  std::string_view key) {
  for (const auto& [k, v] : FlattenReport(report)) {
    if (k == key) return v;
  }
  return std::nullopt;
}

std::string FormatReportText(const EvalReport& report) {
  std::ostringstream out;
  out << "num_sequences=" << report.num_sequences << '\n';
  out << "num_frames=" << report.num_frames << '\n';
  char buf[64];
  for (const auto& [key, value] : FlattenReport(report)) {
    std::snprintf(buf, sizeof(buf), "%.4f", value);
    out << key << '=' << buf << '\n';
  }
  return out.str();
}

std::string FormatReportJson(const EvalReport& report) {
  nlohmann::ordered_json doc;
  doc["num_sequences"] = report.num_sequences;
  doc["num_frames"] = report.num_frames;
  nlohmann::ordered_json metrics = nlohmann::ordered_json::object();
  nlohmann::ordered_json per_class = nlohmann::ordered_json::object();
  for (const auto& [key, value] : FlattenReport(report)) {
    if (key.rfind("class.", 0) == 0) {
      // class.<id>.<metric>
      const size_t dot = key.find('.', 6);
      per_class[key.substr(dot + 1)][key.substr(6, dot - 6)] = value;
    } else {
      metrics[key] = value;
    }
  }
  doc["metrics"] = std::move(metrics);
  doc["per_class"] = std::move(per_class);
  return doc.dump(2) + "\n";
}

}  // namespace tcn::metrics
