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

#include "tcn/tcn_c.h"

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <exception>
#include <filesystem>
#include <memory>
#include <new>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "internal/text.h"
#include "tcn/error.h"
#include "tcn/io/config.h"
#include "tcn/io/formats.h"
#include "tcn/io/manifest.h"
#include "tcn/metrics/report.h"
#include "tcn/models/model.h"
#include "tcn/models/serialize.h"
#include "tcn/models/spec.h"
#include "tcn/models/train.h"
#include "tcn/synth/synth.h"
#include "tcn/viz/timeline.h"

struct tcn_config {
  tcn::io::RunConfig config;
};

struct tcn_dataset {
  std::vector<tcn::io::LoadedSequence> sequences;
  int feature_dim = 0;
  std::vector<std::string> class_names;
};

struct tcn_model {
  tcn::models::TrainedModel model;
};

struct tcn_report {
  tcn::metrics::EvalReport report;
};

namespace {

namespace fs = std::filesystem;
using tcn::io::LoadedSequence;

thread_local std::string g_last_error;

class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

tcn_status Fail(tcn_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename F>
tcn_status Guard(F&& body) {
  try {
    body();
    return TCN_OK;
  } catch (const tcn::Error& e) {
    switch (e.kind()) {
      case tcn::ErrorKind::kConfig:
        return Fail(TCN_ERR_CONFIG, e.what());
      case tcn::ErrorKind::kData:
        return Fail(TCN_ERR_DATA, e.what());
      case tcn::ErrorKind::kParse:
        return Fail(TCN_ERR_PARSE, e.what());
      case tcn::ErrorKind::kIo:
        return Fail(TCN_ERR_IO, e.what());
    }
    return Fail(TCN_ERR_INTERNAL, e.what());
  } catch (const ArgumentError& e) {
    return Fail(TCN_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return Fail(TCN_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(TCN_ERR_INTERNAL, e.what());
  } catch (...) {
    return Fail(TCN_ERR_INTERNAL, "unknown error");
  }
}

void Require(const void* p, const char* name) {
  if (p == nullptr) throw ArgumentError(std::string(name) + " is NULL");
}

char* CopyString(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

tcn::metrics::EvalOptions ToEvalOptions(const tcn_eval_options* options) {
  tcn::metrics::EvalOptions out;
  if (options == nullptr) return out;
  if (options->taus != nullptr) {
    if (options->num_taus == 0) throw ArgumentError("num_taus is 0");
    out.taus.assign(options->taus, options->taus + options->num_taus);
  }
  if (options->background_id >= 0) {
    out.ignore_classes.insert(options->background_id);
  } else if (options->background_id != -1) {
    throw ArgumentError("background_id must be a class id or -1");
  }
  return out;
}

tcn::metrics::EvalSequence Predict(const tcn::models::TrainedModel& model,
                                   const LoadedSequence& seq) {
  auto pass = tcn::models::Forward(model, seq.data.features);
  tcn::metrics::EvalSequence out;
  out.name = seq.name;
  out.pred = tcn::models::PredictLabels(pass.probs);
  out.truth = seq.data.labels;
  out.probs = std::move(pass.probs);
  return out;
}

std::vector<LoadedSequence> ToLoaded(
    const std::vector<tcn::synth::Sequence>& split, const char* prefix) {
  std::vector<LoadedSequence> out;
  for (size_t n = 0; n < split.size(); ++n) {
    char name[32];
    std::snprintf(name, sizeof(name), "%s_%03zu", prefix, n);
    out.push_back({name, split[n]});
  }
  return out;
}

}  // namespace

extern "C" {

const char* tcn_version(void) { return "1.0.0"; }

const char* tcn_status_name(tcn_status status) {
  switch (status) {
    case TCN_OK:
      return "ok";
    case TCN_ERR_CONFIG:
      return "configuration error";
    case TCN_ERR_DATA:
      return "data error";
    case TCN_ERR_PARSE:
      return "parse error";
    case TCN_ERR_IO:
      return "i/o error";
    case TCN_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case TCN_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* tcn_last_error(void) { return g_last_error.c_str(); }

void tcn_string_free(char* s) { delete[] s; }

tcn_status tcn_receptive_field_ed(int d, int L, int64_t* out) {
  return Guard([&] {
    Require(out, "out");
    *out = tcn::models::ReceptiveFieldEd(d, L);
  });
}

tcn_status tcn_receptive_field_dilated(int B, int L, int64_t* out) {
  return Guard([&] {
    Require(out, "out");
    *out = tcn::models::ReceptiveFieldDilated(B, L);
  });
}

void tcn_synth_options_default(tcn_synth_options* options) {
  if (options == nullptr) return;
  const tcn::synth::CompositionSpec defaults;
  options->num_train = defaults.num_train;
  options->num_test = defaults.num_test;
  options->seq_len = defaults.seq_len;
  options->shift = 0;
  options->seed = defaults.seed;
  options->binary_features = 0;
}

tcn_status tcn_synth_write(const tcn_synth_options* options,
                           const char* out_dir) {
  return Guard([&] {
    Require(options, "options");
    Require(out_dir, "out_dir");
    tcn::synth::ShiftSpec spec;
    spec.base.num_train = options->num_train;
    spec.base.num_test = options->num_test;
    spec.base.seq_len = options->seq_len;
    spec.base.seed = options->seed;
    spec.shift = options->shift;
    const auto data = tcn::synth::GenerateShift(spec);
    const fs::path dir(out_dir);
    tcn::io::WriteDataset(dir, data.class_names,
                          {{"train", ToLoaded(data.train, "train")},
                           {"test", ToLoaded(data.test, "test")}},
                          options->binary_features
                              ? tcn::io::FeatureFormat::kBinary
                              : tcn::io::FeatureFormat::kCsv);
    tcn::internal::WriteFile(dir / "transitions.txt",
                             tcn::synth::FormatTransitions(data.transitions));
  });
}

tcn_status tcn_config_create(tcn_config** out) {
  return Guard([&] {
    Require(out, "out");
    *out = new tcn_config();
  });
}

tcn_status tcn_config_read(const char* path, tcn_config** out) {
  return Guard([&] {
    Require(path, "path");
    Require(out, "out");
    *out = new tcn_config{tcn::io::ReadRunConfig(path)};
  });
}

tcn_status tcn_config_clone(const tcn_config* config, tcn_config** out) {
  return Guard([&] {
    Require(config, "config");
    Require(out, "out");
    *out = new tcn_config(*config);
  });
}

tcn_status tcn_config_set(tcn_config* config, const char* key,
                          const char* value) {
  return Guard([&] {
    Require(config, "config");
    Require(key, "key");
    Require(value, "value");
    tcn::io::SetConfigValue(config->config, key, value);
  });
}

tcn_status tcn_config_validate(const tcn_config* config) {
  return Guard([&] {
    Require(config, "config");
    tcn::io::ValidateRunConfig(config->config);
  });
}

tcn_status tcn_config_format(const tcn_config* config, char** text) {
  return Guard([&] {
    Require(config, "config");
    Require(text, "text");
    *text = CopyString(tcn::io::FormatRunConfig(config->config));
  });
}

tcn_status tcn_config_taus(const tcn_config* config, double* taus,
                           size_t* count) {
  return Guard([&] {
    Require(config, "config");
    Require(count, "count");
    const auto& all = config->config.taus;
    if (taus == nullptr) {
      *count = all.size();
      return;
    }
    const size_t n = std::min(*count, all.size());
    std::copy(all.begin(), all.begin() + n, taus);
    *count = n;
  });
}

tcn_status tcn_config_background_id(const tcn_config* config, int* out) {
  return Guard([&] {
    Require(config, "config");
    Require(out, "out");
    *out = config->config.background_id.value_or(-1);
  });
}

void tcn_config_free(tcn_config* config) { delete config; }

tcn_status tcn_dataset_open(const char* dir, const char* split,
                            tcn_dataset** out) {
  return Guard([&] {
    Require(dir, "dir");
    Require(out, "out");
    const auto manifest = tcn::io::ReadManifest(dir);
    auto dataset = std::make_unique<tcn_dataset>();
    dataset->sequences =
        tcn::io::LoadSplit(dir, manifest, split == nullptr ? "" : split);
    dataset->feature_dim = manifest.feature_dim;
    dataset->class_names = manifest.class_names;
    *out = dataset.release();
  });
}

size_t tcn_dataset_size(const tcn_dataset* dataset) {
  return dataset == nullptr ? 0 : dataset->sequences.size();
}

int tcn_dataset_feature_dim(const tcn_dataset* dataset) {
  return dataset == nullptr ? 0 : dataset->feature_dim;
}

int tcn_dataset_num_classes(const tcn_dataset* dataset) {
  return dataset == nullptr ? 0
                            : static_cast<int>(dataset->class_names.size());
}

const char* tcn_dataset_sequence_name(const tcn_dataset* dataset,
                                      size_t index) {
  if (dataset == nullptr || index >= dataset->sequences.size()) return nullptr;
  return dataset->sequences[index].name.c_str();
}

void tcn_dataset_free(tcn_dataset* dataset) { delete dataset; }

tcn_status tcn_train(const tcn_config* config, const tcn_dataset* train_set,
                     tcn_epoch_callback on_epoch, void* user,
                     tcn_model** out) {
  return Guard([&] {
    Require(config, "config");
    Require(train_set, "train_set");
    Require(out, "out");
    const auto& rc = config->config;
    const auto spec = tcn::io::SpecFromConfig(
        rc, train_set->feature_dim,
        static_cast<int>(train_set->class_names.size()));
    std::vector<tcn::models::LabeledSequence<float>> data;
    data.reserve(train_set->sequences.size());
    for (const auto& seq : train_set->sequences) data.push_back(seq.data);
    tcn::models::EpochCallback callback;
    if (on_epoch != nullptr) {
      callback = [on_epoch, user](int epoch, double loss) {
        on_epoch(epoch, loss, user);
      };
    }
    auto model = tcn::models::Train(
        tcn::models::Build<float>(spec, rc.train.seed),
        std::span<const tcn::models::LabeledSequence<float>>(data), rc.train,
        callback);
    *out = new tcn_model{std::move(model)};
  });
}

tcn_status tcn_model_save(const tcn_model* model, const char* path) {
  return Guard([&] {
    Require(model, "model");
    Require(path, "path");
    tcn::models::SaveModel(model->model, path);
  });
}

tcn_status tcn_model_load(const char* path, tcn_model** out) {
  return Guard([&] {
    Require(path, "path");
    Require(out, "out");
    *out = new tcn_model{tcn::models::LoadModel(path)};
  });
}

tcn_status tcn_model_loss_curve(const tcn_model* model, const double** values,
                                size_t* count) {
  return Guard([&] {
    Require(model, "model");
    Require(values, "values");
    Require(count, "count");
    const auto& curve = model->model.metadata.loss_curve;
    *values = curve.data();
    *count = curve.size();
  });
}

tcn_status tcn_model_describe(const tcn_model* model, char** text) {
  return Guard([&] {
    Require(model, "model");
    Require(text, "text");
    const auto& m = model->model;
    std::string out = tcn::models::FormatSpecRecord(m.spec);
    out += "receptive_field=" +
           std::to_string(tcn::models::DeclaredReceptiveField(m.spec)) + "\n";
    out += "parameters=" + std::to_string(m.params.ParameterCount()) + "\n";
    out += "epochs=" + std::to_string(m.metadata.epochs) + "\n";
    out += "seed=" + std::to_string(m.metadata.seed) + "\n";
    *text = CopyString(out);
  });
}

tcn_status tcn_model_receptive_field(const tcn_model* model, int64_t* out) {
  return Guard([&] {
    Require(model, "model");
    Require(out, "out");
    *out = tcn::models::DeclaredReceptiveField(model->model.spec);
  });
}

int tcn_model_num_classes(const tcn_model* model) {
  return model == nullptr ? 0 : tcn::models::NumClasses(model->model.spec);
}

int tcn_model_input_dim(const tcn_model* model) {
  return model == nullptr ? 0 : tcn::models::InputDim(model->model.spec);
}

void tcn_model_free(tcn_model* model) { delete model; }

tcn_status tcn_predict(const tcn_model* model, const float* features,
                       size_t frames, size_t dim, int* labels, float* probs) {
  return Guard([&] {
    Require(model, "model");
    Require(features, "features");
    Require(labels, "labels");
    tcn::nn::SeqTensor<float> input(dim, frames);
    for (size_t t = 0; t < frames; ++t) {
      for (size_t c = 0; c < dim; ++c) input.at(c, t) = features[t * dim + c];
    }
    const auto pass = tcn::models::Forward(model->model, input);
    const auto pred = tcn::models::PredictLabels(pass.probs);
    std::copy(pred.begin(), pred.end(), labels);
    if (probs != nullptr) {
      const size_t classes = pass.probs.channels();
      for (size_t t = 0; t < frames; ++t) {
        for (size_t c = 0; c < classes; ++c) {
          probs[t * classes + c] = pass.probs.at(c, t);
        }
      }
    }
  });
}

tcn_status tcn_predict_dataset(const tcn_model* model,
                               const tcn_dataset* dataset,
                               const char* out_dir) {
  return Guard([&] {
    Require(model, "model");
    Require(dataset, "dataset");
    Require(out_dir, "out_dir");
    const fs::path dir(out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw tcn::IoError("cannot create '" + dir.string() + "'");
    tcn::io::PredictionManifest manifest;
    manifest.num_classes = tcn::models::NumClasses(model->model.spec);
    for (const auto& seq : dataset->sequences) {
      const auto result = Predict(model->model, seq);
      tcn::io::PredictionRecord record{seq.name, seq.name + ".labels",
                                       seq.name + ".probs.tcnf"};
      tcn::io::WriteLabels(result.pred, dir / record.labels);
      tcn::io::WriteFeatures(*result.probs, dir / record.probs,
                             tcn::io::FeatureFormat::kBinary);
      manifest.predictions.push_back(std::move(record));
    }
    tcn::io::WritePredictionManifest(manifest, dir);
  });
}

void tcn_eval_options_default(tcn_eval_options* options) {
  if (options == nullptr) return;
  options->taus = nullptr;
  options->num_taus = 0;
  options->background_id = -1;
}

tcn_status tcn_eval_dirs(const char* pred_dir, const char* truth_dir,
                         const tcn_eval_options* options, tcn_report** out) {
  return Guard([&] {
    Require(pred_dir, "pred_dir");
    Require(truth_dir, "truth_dir");
    Require(out, "out");
    const auto eval_options = ToEvalOptions(options);
    const fs::path pdir(pred_dir);
    const fs::path tdir(truth_dir);
    const auto predictions = tcn::io::ReadPredictionManifest(pdir);
    const auto truth_manifest = tcn::io::ReadManifest(tdir);
    const int num_classes =
        static_cast<int>(truth_manifest.class_names.size());
    if (predictions.num_classes != num_classes) {
      throw tcn::DataError("predictions have " +
                           std::to_string(predictions.num_classes) +
                           " classes, ground truth " +
                           std::to_string(num_classes));
    }
    std::vector<tcn::metrics::EvalSequence> sequences;
    for (const auto& p : predictions.predictions) {
      const tcn::io::SequenceRecord* match = nullptr;
      for (const auto& r : truth_manifest.sequences) {
        if (r.name == p.name) match = &r;
      }
      if (match == nullptr) {
        throw tcn::DataError("prediction '" + p.name +
                             "' has no ground truth in " +
                             (tdir / tcn::io::kManifestFileName).string());
      }
      tcn::metrics::EvalSequence seq;
      seq.name = p.name;
      seq.pred = tcn::io::ReadLabels(pdir / p.labels);
      seq.truth = tcn::io::ReadLabels(tdir / match->labels);
      if (seq.pred.size() != seq.truth.size()) {
        throw tcn::DataError("sequence '" + p.name + "': " +
                             std::to_string(seq.pred.size()) +
                             " predicted frames, " +
                             std::to_string(seq.truth.size()) + " true");
      }
      if (!p.probs.empty()) {
        seq.probs = tcn::io::ReadFeatures(pdir / p.probs);
        if (static_cast<int>(seq.probs->channels()) != num_classes) {
          throw tcn::DataError((pdir / p.probs).string() + ": " +
                               std::to_string(seq.probs->channels()) +
                               " probability channels, expected " +
                               std::to_string(num_classes));
        }
      }
      sequences.push_back(std::move(seq));
    }
    *out = new tcn_report{tcn::metrics::Evaluate(sequences, eval_options)};
  });
}

tcn_status tcn_eval_model(const tcn_model* model, const tcn_dataset* dataset,
                          const tcn_eval_options* options, tcn_report** out) {
  return Guard([&] {
    Require(model, "model");
    Require(dataset, "dataset");
    Require(out, "out");
    const auto eval_options = ToEvalOptions(options);
    std::vector<tcn::metrics::EvalSequence> sequences;
    for (const auto& seq : dataset->sequences) {
      sequences.push_back(Predict(model->model, seq));
    }
    *out = new tcn_report{tcn::metrics::Evaluate(sequences, eval_options)};
  });
}

tcn_status tcn_eval_labels(const int* pred, const int* truth, size_t frames,
                           const tcn_eval_options* options, tcn_report** out) {
  return Guard([&] {
    Require(out, "out");
    if (frames > 0) {
      Require(pred, "pred");
      Require(truth, "truth");
    }
    const auto eval_options = ToEvalOptions(options);
    tcn::metrics::EvalSequence seq;
    seq.name = "sequence";
    if (frames > 0) {
      seq.pred.assign(pred, pred + frames);
      seq.truth.assign(truth, truth + frames);
    }
    const std::vector<tcn::metrics::EvalSequence> one = {std::move(seq)};
    *out = new tcn_report{tcn::metrics::Evaluate(one, eval_options)};
  });
}

tcn_status tcn_report_text(const tcn_report* report, char** text) {
  return Guard([&] {
    Require(report, "report");
    Require(text, "text");
    *text = CopyString(tcn::metrics::FormatReportText(report->report));
  });
}

tcn_status tcn_report_json(const tcn_report* report, char** text) {
  return Guard([&] {
    Require(report, "report");
    Require(text, "text");
    *text = CopyString(tcn::metrics::FormatReportJson(report->report));
  });
}

tcn_status tcn_report_get(const tcn_report* report, const char* key,
                          double* value) {
  return Guard([&] {
    Require(report, "report");
    Require(key, "key");
    Require(value, "value");
    const auto v = tcn::metrics::ReportValue(report->report, key);
    if (!v) throw ArgumentError(std::string("report has no key '") + key + "'");
    *value = *v;
  });
}

void tcn_report_free(tcn_report* report) { delete report; }

tcn_status tcn_timeline_render(const char* truth_path,
                               const char* const* pred_paths, size_t num_preds,
                               const char* out_path) {
  return Guard([&] {
    Require(truth_path, "truth_path");
    Require(out_path, "out_path");
    if (num_preds > 0) Require(pred_paths, "pred_paths");
    std::vector<tcn::viz::TimelineRow> rows;
    rows.push_back({"truth", tcn::io::ReadLabels(truth_path)});
    for (size_t i = 0; i < num_preds; ++i) {
      Require(pred_paths[i], "pred_paths[i]");
      const fs::path p(pred_paths[i]);
      rows.push_back({p.stem().string(), tcn::io::ReadLabels(p)});
    }
    const fs::path out(out_path);
    tcn::internal::WriteFile(out, out.extension() == ".svg"
                                      ? tcn::viz::RenderTimelineSvg(rows)
                                      : tcn::viz::RenderTimelineText(rows));
  });
}

}  // extern "C"
