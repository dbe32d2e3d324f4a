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

// Command-line front end. Talks to the library only through the C API.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "tcn/tcn_c.h"

namespace {

// Failure of a C API call or of the command itself; carries the one-line
// diagnostic printed before exiting.
class CommandError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void Check(tcn_status status, const std::string& context) {
  if (status != TCN_OK) {
    throw CommandError(context + ": " + tcn_status_name(status) + ": " +
                       tcn_last_error());
  }
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using ConfigPtr = std::unique_ptr<tcn_config, Deleter<tcn_config, tcn_config_free>>;
using DatasetPtr =
    std::unique_ptr<tcn_dataset, Deleter<tcn_dataset, tcn_dataset_free>>;
using ModelPtr = std::unique_ptr<tcn_model, Deleter<tcn_model, tcn_model_free>>;
using ReportPtr =
    std::unique_ptr<tcn_report, Deleter<tcn_report, tcn_report_free>>;

std::string TakeString(char* s) {
  std::string out(s);
  tcn_string_free(s);
  return out;
}

void WriteText(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  out.close();
  if (!out) throw CommandError("cannot write '" + path + "'");
}

ConfigPtr ReadConfig(const std::string& path) {
  tcn_config* raw = nullptr;
  Check(tcn_config_read(path.c_str(), &raw), "reading config " + path);
  return ConfigPtr(raw);
}

DatasetPtr OpenDataset(const std::string& dir, const std::string& split) {
  tcn_dataset* raw = nullptr;
  Check(tcn_dataset_open(dir.c_str(), split.c_str(), &raw),
        "opening " + split + " split of " + dir);
  if (tcn_dataset_size(raw) == 0) {
    tcn_dataset_free(raw);
    throw CommandError("dataset " + dir + " has no '" + split + "' sequences");
  }
  return DatasetPtr(raw);
}

std::string FormatNumber(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

// ---- synth ---------------------------------------------------------------

struct SynthArgs {
  std::string spec = "composition";
  int shift = 0;
  std::string out;
  uint64_t seed = 0;
  int num_train = 50;
  int num_test = 10;
  int seq_len = 150;
  std::string format = "csv";
};

int RunSynth(const SynthArgs& args) {
  if (args.spec == "composition" && args.shift != 0) {
    throw CommandError("--shift requires --spec shift");
  }
  tcn_synth_options options;
  tcn_synth_options_default(&options);
  options.num_train = args.num_train;
  options.num_test = args.num_test;
  options.seq_len = args.seq_len;
  options.shift = args.shift;
  options.seed = args.seed;
  options.binary_features = args.format == "binary";
  Check(tcn_synth_write(&options, args.out.c_str()), "writing " + args.out);
  std::cout << "wrote " << args.num_train << " train + " << args.num_test
            << " test sequences of T=" << args.seq_len << " to " << args.out
            << "\n";
  return 0;
}

// ---- train ---------------------------------------------------------------

struct TrainArgs {
  std::string config;
  std::string data;
  std::string out;
  std::string split = "train";
  std::optional<int> epochs;
  std::optional<uint64_t> seed;
  std::string loss_log;
  bool quiet = false;
};

void OnEpoch(int epoch, double loss, void* user) {
  const auto* total = static_cast<const int*>(user);
  if (epoch == 1 || epoch % 10 == 0 || epoch == *total) {
    std::cerr << "epoch " << epoch << "/" << *total << " loss "
              << FormatNumber(loss) << "\n";
  }
}

int RunTrain(const TrainArgs& args) {
  ConfigPtr config = ReadConfig(args.config);
  if (args.epochs) {
    if (*args.epochs < 1) throw CommandError("--epochs must be >= 1");
    Check(tcn_config_set(config.get(), "epochs",
                         std::to_string(*args.epochs).c_str()),
          "--epochs");
  }
  if (args.seed) {
    Check(tcn_config_set(config.get(), "seed",
                         std::to_string(*args.seed).c_str()),
          "--seed");
  }
  DatasetPtr data = OpenDataset(args.data, args.split);
  char* text = nullptr;
  Check(tcn_config_format(config.get(), &text), "config");
  std::istringstream lines(TakeString(text));
  int epochs = 0;
  for (std::string line; std::getline(lines, line);) {
    if (line.rfind("epochs=", 0) == 0) epochs = std::stoi(line.substr(7));
  }
  tcn_model* raw = nullptr;
  Check(tcn_train(config.get(), data.get(), args.quiet ? nullptr : OnEpoch,
                  &epochs, &raw),
        "training");
  ModelPtr model(raw);
  Check(tcn_model_save(model.get(), args.out.c_str()), "saving " + args.out);

  const double* losses = nullptr;
  size_t count = 0;
  Check(tcn_model_loss_curve(model.get(), &losses, &count), "loss curve");
  std::ostringstream csv;
  csv << "epoch,loss\n";
  for (size_t i = 0; i < count; ++i) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%zu,%.9g\n", i + 1, losses[i]);
    csv << buf;
  }
  const std::string log = args.loss_log.empty() ? args.out + ".loss.csv"
                                                : args.loss_log;
  WriteText(log, csv.str());
  std::cout << "wrote model " << args.out << " and loss curve " << log
            << "\n";
  return 0;
}

// ---- predict -------------------------------------------------------------

struct PredictArgs {
  std::string model;
  std::string data;
  std::string split = "test";
  std::string out;
};

int RunPredict(const PredictArgs& args) {
  tcn_model* raw = nullptr;
  Check(tcn_model_load(args.model.c_str(), &raw), "loading " + args.model);
  ModelPtr model(raw);
  DatasetPtr data = OpenDataset(args.data, args.split);
  Check(tcn_predict_dataset(model.get(), data.get(), args.out.c_str()),
        "predicting");
  std::cout << "wrote " << tcn_dataset_size(data.get())
            << " predictions to " << args.out << "\n";
  return 0;
}

// ---- eval ----------------------------------------------------------------

struct EvalArgs {
  std::string pred;
  std::string truth;
  std::string tau = "10,25,50";
  std::optional<int> background_id;
  std::string out;
  bool json = false;
};

std::vector<double> ParseTaus(const std::string& list) {
  // Reuse the library's parser through a scratch config.
  tcn_config* raw = nullptr;
  Check(tcn_config_create(&raw), "config");
  ConfigPtr config(raw);
  Check(tcn_config_set(config.get(), "tau", list.c_str()), "--tau");
  size_t count = 0;
  Check(tcn_config_taus(config.get(), nullptr, &count), "--tau");
  std::vector<double> taus(count);
  Check(tcn_config_taus(config.get(), taus.data(), &count), "--tau");
  return taus;
}

int RunEval(const EvalArgs& args) {
  const auto taus = ParseTaus(args.tau);
  tcn_eval_options options;
  tcn_eval_options_default(&options);
  options.taus = taus.data();
  options.num_taus = taus.size();
  if (args.background_id) {
    if (*args.background_id < 0) {
      throw CommandError("--background-id must be >= 0");
    }
    options.background_id = *args.background_id;
  }
  tcn_report* raw = nullptr;
  Check(tcn_eval_dirs(args.pred.c_str(), args.truth.c_str(), &options, &raw),
        "evaluating " + args.pred);
  ReportPtr report(raw);
  char* text = nullptr;
  Check(tcn_report_text(report.get(), &text), "report");
  const std::string plain = TakeString(text);
  Check(tcn_report_json(report.get(), &text), "report");
  const std::string json = TakeString(text);
  std::cout << (args.json ? json : plain);
  if (!args.out.empty()) {
    const bool as_json = args.out.size() >= 5 &&
                         args.out.compare(args.out.size() - 5, 5, ".json") == 0;
    WriteText(args.out, as_json ? json : plain);
  }
  return 0;
}

// ---- rf ------------------------------------------------------------------

struct RfArgs {
  std::string model;
  std::optional<int> layers;
  std::optional<int> duration;
  std::optional<int> blocks;
};

int RunRf(const RfArgs& args) {
  if (!args.layers) throw CommandError("--L is required");
  int64_t rf = 0;
  if (args.model == "ed") {
    if (!args.duration) throw CommandError("--d is required for --model ed");
    if (args.blocks) throw CommandError("--B does not apply to --model ed");
    Check(tcn_receptive_field_ed(*args.duration, *args.layers, &rf),
          "receptive field");
  } else {
    if (!args.blocks) {
      throw CommandError("--B is required for --model dilated");
    }
    if (args.duration) {
      throw CommandError("--d does not apply to --model dilated");
    }
    Check(tcn_receptive_field_dilated(*args.blocks, *args.layers, &rf),
          "receptive field");
  }
  std::cout << rf << "\n";
  return 0;
}

// ---- timeline ------------------------------------------------------------

struct TimelineArgs {
  std::vector<std::string> pred;
  std::string truth;
  std::string out;
};

int RunTimeline(const TimelineArgs& args) {
  std::vector<const char*> preds;
  for (const auto& p : args.pred) preds.push_back(p.c_str());
  Check(tcn_timeline_render(args.truth.c_str(), preds.data(), preds.size(),
                            args.out.c_str()),
        "rendering timeline");
  std::cout << "wrote " << args.out << "\n";
  return 0;
}

// ---- sweep ---------------------------------------------------------------

struct SweepArgs {
  std::string config;
  std::string data;
  std::string param;
  std::vector<int> values;
  std::string out;
  std::optional<int> epochs;
  std::optional<uint64_t> seed;
};

struct SweepRow {
  int value = 0;
  bool ok = false;
  int64_t receptive_field = 0;
  double f1_25 = 0.0;
  double accuracy = 0.0;
  std::string error;
};

unsigned WorkerCount(size_t jobs) {
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("TCN_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) {
      throw CommandError(std::string("TCN_THREADS must be a positive integer, "
                                     "got '") + env + "'");
    }
    threads = static_cast<unsigned>(v);
  }
  return static_cast<unsigned>(std::min<size_t>(threads, jobs));
}

void RunSweepPoint(const tcn_config* base, const tcn_dataset* train,
                   const tcn_dataset* test, const std::string& key,
                   SweepRow& row) {
  try {
    tcn_config* raw = nullptr;
    Check(tcn_config_clone(base, &raw), "config");
    ConfigPtr config(raw);
    Check(tcn_config_set(config.get(), key.c_str(),
                         std::to_string(row.value).c_str()),
          key);
    tcn_model* model_raw = nullptr;
    Check(tcn_train(config.get(), train, nullptr, nullptr, &model_raw),
          "training");
    ModelPtr model(model_raw);
    Check(tcn_model_receptive_field(model.get(), &row.receptive_field),
          "receptive field");
    const double tau = 0.25;
    tcn_eval_options options;
    tcn_eval_options_default(&options);
    options.taus = &tau;
    options.num_taus = 1;
    Check(tcn_config_background_id(config.get(), &options.background_id),
          "config");
    tcn_report* report_raw = nullptr;
    Check(tcn_eval_model(model.get(), test, &options, &report_raw),
          "evaluating");
    ReportPtr report(report_raw);
    Check(tcn_report_get(report.get(), "F1@25", &row.f1_25), "report");
    Check(tcn_report_get(report.get(), "accuracy", &row.accuracy), "report");
    row.ok = true;
  } catch (const std::exception& e) {
    row.error = e.what();
  }
}

int RunSweep(const SweepArgs& args) {
  ConfigPtr config = ReadConfig(args.config);
  if (args.epochs) {
    if (*args.epochs < 1) throw CommandError("--epochs must be >= 1");
    Check(tcn_config_set(config.get(), "epochs",
                         std::to_string(*args.epochs).c_str()),
          "--epochs");
  }
  if (args.seed) {
    Check(tcn_config_set(config.get(), "seed",
                         std::to_string(*args.seed).c_str()),
          "--seed");
  }
  DatasetPtr train = OpenDataset(args.data, "train");
  DatasetPtr test = OpenDataset(args.data, "test");

  std::vector<SweepRow> rows(args.values.size());
  for (size_t i = 0; i < rows.size(); ++i) rows[i].value = args.values[i];
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < rows.size(); i = next++) {
      RunSweepPoint(config.get(), train.get(), test.get(), args.param,
                    rows[i]);
    }
  };
  std::vector<std::thread> pool;
  const unsigned workers = WorkerCount(rows.size());
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::ostringstream csv;
  csv << "value,receptive_field,F1@25,accuracy,status\n";
  size_t failures = 0;
  for (const auto& row : rows) {
    if (row.ok) {
      csv << row.value << ',' << row.receptive_field << ','
          << FormatNumber(row.f1_25) << ',' << FormatNumber(row.accuracy)
          << ",ok\n";
    } else {
      ++failures;
      std::string message = row.error;
      std::replace(message.begin(), message.end(), '"', '\'');
      csv << row.value << ",,,,\"error: " << message << "\"\n";
    }
  }
  if (args.out.empty()) {
    std::cout << csv.str();
  } else {
    WriteText(args.out, csv.str());
    std::cout << "wrote " << rows.size() << " rows to " << args.out << "\n";
  }
  if (failures > 0) {
    std::cerr << "tcn sweep: " << failures << " of " << rows.size()
              << " runs failed (see status column)\n";
  }
  return failures == rows.size() ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Temporal convolutional networks for action segmentation"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", tcn_version());

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic dataset");
  synth_cmd->add_option("--spec", synth.spec, "composition or shift")
      ->check(CLI::IsMember({"composition", "shift"}));
  synth_cmd->add_option("--shift", synth.shift, "Feature delay in frames");
  synth_cmd->add_option("--out", synth.out, "Output directory")->required();
  synth_cmd->add_option("--seed", synth.seed, "Random seed");
  synth_cmd->add_option("--num-train", synth.num_train, "Training sequences");
  synth_cmd->add_option("--num-test", synth.num_test, "Test sequences");
  synth_cmd->add_option("--seq-len", synth.seq_len, "Frames per sequence");
  synth_cmd->add_option("--format", synth.format, "Feature files: csv|binary")
      ->check(CLI::IsMember({"csv", "binary"}));

  TrainArgs train;
  auto* train_cmd = app.add_subcommand("train", "Train a model");
  train_cmd->add_option("--config", train.config, "Run config")->required();
  train_cmd->add_option("--data", train.data, "Dataset directory")->required();
  train_cmd->add_option("--out", train.out, "Model file to write")->required();
  train_cmd->add_option("--split", train.split, "Split to train on");
  train_cmd->add_option("--epochs", train.epochs, "Override epochs");
  train_cmd->add_option("--seed", train.seed, "Override seed");
  train_cmd->add_option("--loss-log", train.loss_log,
                        "Loss CSV (default <out>.loss.csv)");
  train_cmd->add_flag("--quiet", train.quiet, "No progress output");

  PredictArgs predict;
  auto* predict_cmd = app.add_subcommand("predict", "Label a dataset split");
  predict_cmd->add_option("--model", predict.model, "Model file")->required();
  predict_cmd->add_option("--data", predict.data, "Dataset directory")
      ->required();
  predict_cmd->add_option("--split", predict.split, "Split to label");
  predict_cmd->add_option("--out", predict.out, "Prediction directory")
      ->required();

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Score predictions");
  eval_cmd->add_option("--pred", eval.pred, "Prediction directory")
      ->required();
  eval_cmd->add_option("--truth", eval.truth, "Dataset directory")->required();
  eval_cmd->add_option("--tau", eval.tau, "IoU thresholds in percent");
  eval_cmd->add_option("--background-id", eval.background_id,
                       "Class left out of F1 and edit");
  eval_cmd->add_option("--out", eval.out, "Report file (.json or text)");
  eval_cmd->add_flag("--json", eval.json, "Print JSON instead of key=value");

  RfArgs rf;
  auto* rf_cmd = app.add_subcommand("rf", "Print a receptive field");
  rf_cmd->add_option("--model", rf.model, "ed or dilated")
      ->required()
      ->check(CLI::IsMember({"ed", "dilated"}));
  rf_cmd->add_option("--L", rf.layers, "Layers (per block)");
  rf_cmd->add_option("--d", rf.duration, "Filter duration (ed)");
  rf_cmd->add_option("--B", rf.blocks, "Blocks (dilated)");

  TimelineArgs timeline;
  auto* timeline_cmd =
      app.add_subcommand("timeline", "Render label timelines");
  timeline_cmd->add_option("--pred", timeline.pred, "Predicted label files")
      ->required();
  timeline_cmd->add_option("--truth", timeline.truth, "True label file")
      ->required();
  timeline_cmd->add_option("--out", timeline.out, "Output .svg or .txt")
      ->required();

  SweepArgs sweep;
  auto* sweep_cmd =
      app.add_subcommand("sweep", "Train one model per parameter value");
  sweep_cmd->add_option("--config", sweep.config, "Base run config")
      ->required();
  sweep_cmd->add_option("--data", sweep.data, "Dataset directory")->required();
  sweep_cmd->add_option("--param", sweep.param, "d, L or B")
      ->required()
      ->check(CLI::IsMember({"d", "L", "B"}));
  sweep_cmd->add_option("--values", sweep.values, "Comma-separated values")
      ->required()
      ->delimiter(',');
  sweep_cmd->add_option("--out", sweep.out, "CSV file (default stdout)");
  sweep_cmd->add_option("--epochs", sweep.epochs, "Override epochs");
  sweep_cmd->add_option("--seed", sweep.seed, "Override seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::string message = e.what();
    std::replace(message.begin(), message.end(), '\n', ' ');
    std::cerr << "tcn: usage error: " << message << "\n";
    return 2;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    if (name == "synth") return RunSynth(synth);
    if (name == "train") return RunTrain(train);
    if (name == "predict") return RunPredict(predict);
    if (name == "eval") return RunEval(eval);
    if (name == "rf") return RunRf(rf);
    if (name == "timeline") return RunTimeline(timeline);
    if (name == "sweep") return RunSweep(sweep);
  } catch (const std::exception& e) {
    std::string message = e.what();
    std::replace(message.begin(), message.end(), '\n', ' ');
    std::cerr << "tcn " << name << ": error: " << message << "\n";
    return 1;
  }
  return 1;
}
