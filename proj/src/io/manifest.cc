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

#include "tcn/io/manifest.h"

#include <set>
#include <sstream>

#include "internal/text.h"
#include "tcn/error.h"

namespace tcn::io {
namespace {

std::vector<std::string> Tokens(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string token;
  while (in >> token) out.push_back(token);
  return out;
}

int ParseCount(const std::string& token, const std::string& where,
               const char* what) {
  int64_t v = 0;
  if (!internal::ParseInt64(token, v) || v < 0 || v > INT32_MAX) {
    throw ParseError(where + ": bad " + what + " '" + token + "'");
  }
  return static_cast<int>(v);
}

// Calls on_line(tokens, where) for each content line after checking the
// header "<magic> 1".
template <typename F>
void ForEachLine(const std::string& text, const std::string& source,
                 const std::string& magic, F on_line) {
  size_t line_no = 0;
  bool header = false;
  for (std::string_view raw : internal::Split(text, '\n')) {
    ++line_no;
    const auto line = internal::Trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto tokens = Tokens(line);
    const std::string where = source + ":" + std::to_string(line_no);
    if (!header) {
      if (tokens.size() != 2 || tokens[0] != magic || tokens[1] != "1") {
        throw ParseError(where + ": expected header '" + magic + " 1'");
      }
      header = true;
      continue;
    }
    on_line(tokens, where);
  }
  if (!header) throw ParseError(source + ": missing header '" + magic + " 1'");
}

void ExpectArity(const std::vector<std::string>& tokens, size_t n,
                 const std::string& where) {
  if (tokens.size() != n) {
    throw ParseError(where + ": '" + tokens[0] + "' takes " +
                     std::to_string(n - 1) + " fields, got " +
                     std::to_string(tokens.size() - 1));
  }
}

}  // namespace

DatasetManifest ParseManifest(const std::string& text,
                              const std::string& source) {
  DatasetManifest m;
  std::vector<std::pair<int, std::string>> classes;
  std::set<std::string> names;
  ForEachLine(text, source, "tcn-dataset", [&](const auto& tokens,
                                               const std::string& where) {
    if (tokens[0] == "feature_dim") {
      ExpectArity(tokens, 2, where);
      m.feature_dim = ParseCount(tokens[1], where, "feature_dim");
    } else if (tokens[0] == "class") {
      ExpectArity(tokens, 3, where);
      classes.emplace_back(ParseCount(tokens[1], where, "class id"), tokens[2]);
    } else if (tokens[0] == "sequence") {
      ExpectArity(tokens, 5, where);
      const auto& split = tokens[1];
      if (split != "train" && split != "val" && split != "test") {
        throw DataError(where + ": unknown split '" + split +
                        "' (expected train|val|test)");
      }
      if (!names.insert(tokens[2]).second) {
        throw DataError(where + ": duplicate sequence name '" + tokens[2] +
                        "'");
      }
      m.sequences.push_back({split, tokens[2], tokens[3], tokens[4]});
    } else {
      throw ParseError(where + ": unknown directive '" + tokens[0] + "'");
    }
  });
  if (m.feature_dim < 1) throw DataError(source + ": feature_dim missing or 0");
  if (classes.empty()) throw DataError(source + ": no classes");
  m.class_names.resize(classes.size());
  std::vector<bool> seen(classes.size(), false);
  for (const auto& [id, name] : classes) {
    if (id >= static_cast<int>(classes.size()) || seen[id]) {
      throw DataError(source + ": class ids must be dense in [0, " +
                      std::to_string(classes.size()) + "), got " +
                      std::to_string(id));
    }
    seen[id] = true;
    m.class_names[id] = name;
  }
  return m;
}

std::string FormatManifest(const DatasetManifest& m) {
  std::ostringstream out;
  out << "tcn-dataset 1\n";
  out << "feature_dim " << m.feature_dim << '\n';
  for (size_t c = 0; c < m.class_names.size(); ++c) {
    out << "class " << c << ' ' << m.class_names[c] << '\n';
  }
  for (const auto& s : m.sequences) {
    out << "sequence " << s.split << ' ' << s.name << ' '
        << s.features.generic_string() << ' ' << s.labels.generic_string()
        << '\n';
  }
  return out.str();
}

DatasetManifest ReadManifest(const std::filesystem::path& dir) {
  const auto path = dir / kManifestFileName;
  return ParseManifest(internal::ReadFile(path), path.string());
}

void WriteManifest(const DatasetManifest& manifest,
                   const std::filesystem::path& dir) {
  internal::WriteFile(dir / kManifestFileName, FormatManifest(manifest));
}

std::vector<LoadedSequence> LoadSplit(const std::filesystem::path& dir,
                                      const DatasetManifest& manifest,
                                      const std::string& split) {
  const int num_classes = static_cast<int>(manifest.class_names.size());
  std::vector<LoadedSequence> out;
  for (const auto& record : manifest.sequences) {
    if (!split.empty() && record.split != split) continue;
    const auto feature_path = dir / record.features;
    const auto label_path = dir / record.labels;
    LoadedSequence seq{record.name,
                       {ReadFeatures(feature_path), ReadLabels(label_path)}};
    const auto& f = seq.data.features;
    if (static_cast<int>(f.channels()) != manifest.feature_dim) {
      throw DataError(feature_path.string() + ": feature dimension " +
                      std::to_string(f.channels()) + ", manifest says " +
                      std::to_string(manifest.feature_dim));
    }
    if (seq.data.labels.size() != f.frames()) {
      throw DataError(label_path.string() + ": " +
                      std::to_string(seq.data.labels.size()) +
                      " labels for " + std::to_string(f.frames()) +
                      " feature frames");
    }
    for (size_t t = 0; t < seq.data.labels.size(); ++t) {
      const int label = seq.data.labels[t];
      if (label < 0 || label >= num_classes) {
        throw DataError(label_path.string() + ":" + std::to_string(t + 1) +
                        ": label " + std::to_string(label) +
                        " outside [0, " + std::to_string(num_classes) + ")");
      }
    }
    out.push_back(std::move(seq));
  }
  return out;
}

void WriteDataset(
    const std::filesystem::path& dir,
    const std::vector<std::string>& class_names,
    const std::vector<std::pair<std::string, std::vector<LoadedSequence>>>&
        splits,
    FeatureFormat format) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw IoError("cannot create '" + dir.string() + "': " + ec.message());
  }
  DatasetManifest m;
  m.class_names = class_names;
  const char* ext = format == FeatureFormat::kBinary ? ".tcnf" : ".csv";
  for (const auto& [split, sequences] : splits) {
    std::filesystem::create_directories(dir / split, ec);
    if (ec) {
      throw IoError("cannot create '" + (dir / split).string() +
                    "': " + ec.message());
    }
    for (const auto& seq : sequences) {
      const int dim = static_cast<int>(seq.data.features.channels());
      if (m.feature_dim == 0) m.feature_dim = dim;
      if (dim != m.feature_dim) {
        throw DataError("sequence '" + seq.name + "' has feature dimension " +
                        std::to_string(dim) + ", expected " +
                        std::to_string(m.feature_dim));
      }
      const std::filesystem::path features =
          std::filesystem::path(split) / (seq.name + ext);
      const std::filesystem::path labels =
          std::filesystem::path(split) / (seq.name + ".labels");
      WriteFeatures(seq.data.features, dir / features, format);
      WriteLabels(seq.data.labels, dir / labels);
      m.sequences.push_back({split, seq.name, features, labels});
    }
  }
  WriteManifest(m, dir);
}

PredictionManifest ParsePredictionManifest(const std::string& text,
                                           const std::string& source) {
  PredictionManifest m;
  std::set<std::string> names;
  ForEachLine(text, source, "tcn-predictions", [&](const auto& tokens,
                                                   const std::string& where) {
    if (tokens[0] == "num_classes") {
      ExpectArity(tokens, 2, where);
      m.num_classes = ParseCount(tokens[1], where, "num_classes");
    } else if (tokens[0] == "prediction") {
      ExpectArity(tokens, 4, where);
      if (!names.insert(tokens[1]).second) {
        throw DataError(where + ": duplicate prediction '" + tokens[1] + "'");
      }
      m.predictions.push_back(
          {tokens[1], tokens[2],
           tokens[3] == "-" ? std::filesystem::path()
                            : std::filesystem::path(tokens[3])});
    } else {
      throw ParseError(where + ": unknown directive '" + tokens[0] + "'");
    }
  });
  return m;
}

std::string FormatPredictionManifest(const PredictionManifest& m) {
  std::ostringstream out;
  out << "tcn-predictions 1\n";
  out << "num_classes " << m.num_classes << '\n';
  for (const auto& p : m.predictions) {
    out << "prediction " << p.name << ' ' << p.labels.generic_string() << ' '
        << (p.probs.empty() ? std::string("-") : p.probs.generic_string())
        << '\n';
  }
  return out.str();
}

PredictionManifest ReadPredictionManifest(const std::filesystem::path& dir) {
  const auto path = dir / kPredictionsFileName;
  return ParsePredictionManifest(internal::ReadFile(path), path.string());
}

void WritePredictionManifest(const PredictionManifest& manifest,
                             const std::filesystem::path& dir) {
  internal::WriteFile(dir / kPredictionsFileName,
                      FormatPredictionManifest(manifest));
}

}  // namespace tcn::io
