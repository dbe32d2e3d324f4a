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

#ifndef TCN_IO_MANIFEST_H_
#define TCN_IO_MANIFEST_H_

// Dataset and prediction manifests: line-oriented text files whose paths
// are relative to the manifest's directory (no whitespace in names or
// paths). Blank lines and '#' comments are ignored.
//
//   tcn-dataset 1
//   feature_dim 3
//   class 0 A1                        one per class, ids dense from 0
//   sequence <split> <name> <features> <labels>
//
//   tcn-predictions 1
//   num_classes 5
//   prediction <name> <labels> <probs|->
//
// Prediction probabilities are stored as a feature file with F0 = C.

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "tcn/io/formats.h"
#include "tcn/models/train.h"

namespace tcn::io {

inline constexpr char kManifestFileName[] = "manifest.txt";
inline constexpr char kPredictionsFileName[] = "predictions.txt";

struct SequenceRecord {
  std::string split;  // "train", "val" or "test"
  std::string name;
  std::filesystem::path features;  // relative to the manifest directory
  std::filesystem::path labels;
};

struct DatasetManifest {
  int feature_dim = 0;
  std::vector<std::string> class_names;
  std::vector<SequenceRecord> sequences;
};

// Throws ParseError (with the line) on malformed manifests and DataError on
// duplicate names, unknown splits, or class ids that are not dense.
DatasetManifest ParseManifest(const std::string& text,
                              const std::string& source = "manifest");
std::string FormatManifest(const DatasetManifest& manifest);

DatasetManifest ReadManifest(const std::filesystem::path& dir);
void WriteManifest(const DatasetManifest& manifest,
                   const std::filesystem::path& dir);

struct LoadedSequence {
  std::string name;
  models::LabeledSequence<float> data;
};

// Reads every sequence of `split` ("" for all) and checks it against the
// manifest: feature dimension, T agreement between features and labels, and
// labels in [0, C). Violations throw DataError naming the file.
std::vector<LoadedSequence> LoadSplit(const std::filesystem::path& dir,
                                      const DatasetManifest& manifest,
                                      const std::string& split);

// Writes features, labels and the manifest for a synthetic or converted
// dataset; files go to <dir>/<split>/<name>.{tcnf|csv,labels}.
void WriteDataset(const std::filesystem::path& dir,
                  const std::vector<std::string>& class_names,
                  const std::vector<std::pair<std::string,
                                              std::vector<LoadedSequence>>>&
                      splits,
                  FeatureFormat format);

struct PredictionRecord {
  std::string name;
  std::filesystem::path labels;
  std::filesystem::path probs;  // empty when not supplied
};

struct PredictionManifest {
  int num_classes = 0;
  std::vector<PredictionRecord> predictions;
};

PredictionManifest ParsePredictionManifest(
    const std::string& text, const std::string& source = "predictions");
std::string FormatPredictionManifest(const PredictionManifest& manifest);
PredictionManifest ReadPredictionManifest(const std::filesystem::path& dir);
void WritePredictionManifest(const PredictionManifest& manifest,
                             const std::filesystem::path& dir);

}  // namespace tcn::io

#endif  // TCN_IO_MANIFEST_H_
