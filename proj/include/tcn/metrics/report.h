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

#ifndef TCN_METRICS_REPORT_H_
#define TCN_METRICS_REPORT_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tcn/metrics/metrics.h"

namespace tcn::metrics {

struct EvalSequence {
  std::string name;
  std::vector<int> pred;
  std::vector<int> truth;
  // C x T class probabilities; enables the detection (mAP) scores.
  std::optional<nn::SeqTensor<float>> probs;
};

struct EvalOptions {
  std::vector<double> taus = {0.10, 0.25, 0.50};
  ClassSet ignore_classes;
};

struct DetectionReport {
  double map_mid = 0.0;
  std::vector<std::pair<double, double>> map_iou;  // (tau, mAP)
  std::map<int, double> ap_mid_per_class;
};

// Accuracy, edit and F1 are means over sequences; per-class values and the
// detection scores pool all sequences.
struct EvalReport {
  size_t num_sequences = 0;
  size_t num_frames = 0;
  double accuracy = 0.0;
  double edit = 0.0;
  std::vector<std::pair<double, double>> f1;  // (tau, F1@k)
  std::optional<DetectionReport> detection_mean;
  std::optional<DetectionReport> detection_max;
  std::map<int, double> class_accuracy;  // frame recall of each true class
  // F1 of each class at each tau, from counts summed over sequences.
  std::map<int, std::vector<std::pair<double, double>>> class_f1;
};

// Throws DataError on length mismatches or when only some sequences carry
// probabilities; ConfigError on invalid taus.
EvalReport Evaluate(std::span<const EvalSequence> sequences,
                    const EvalOptions& options = {});

// "10" for 0.10, "25" for 0.25, "12.5" for 0.125.
std::string TauLabel(double tau);

// Every scalar of the report under its flat key, e.g. "accuracy", "F1@25",
// "mAP@mid[max]", "mAP@50[mean]", "class.3.accuracy", "class.3.F1@10",
// "class.3.AP@mid[mean]".
std::vector<std::pair<std::string, double>> FlattenReport(
    const EvalReport& report);

std::optional<double> ReportValue(const EvalReport& report,
                                  std::string_view key);

// key=value lines in FlattenReport order.
std::string FormatReportText(const EvalReport& report);

// {"num_sequences":..,"num_frames":..,"metrics":{key:score},
//  "per_class":{metric:{class_id:score}}}
std::string FormatReportJson(const EvalReport& report);

}  // namespace tcn::metrics

#endif  // TCN_METRICS_REPORT_H_
