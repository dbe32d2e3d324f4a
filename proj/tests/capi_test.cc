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

// Exercises the shared library strictly through its C header.

#include "tcn/tcn_c.h"

#include <gtest/gtest.h>
#include <unistd.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;

class CApiTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("tcn_capi_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Path(const std::string& name) const {
    return (dir_ / name).string();
  }

  // Small composition dataset: 8 train, 3 test sequences of 60 frames.
  std::string WriteSynth(int shift = 0) {
    tcn_synth_options options;
    tcn_synth_options_default(&options);
    options.num_train = 8;
    options.num_test = 3;
    options.seq_len = 60;
    options.shift = shift;
    options.seed = 5;
    const std::string out = Path("data");
    EXPECT_EQ(tcn_synth_write(&options, out.c_str()), TCN_OK)
        << tcn_last_error();
    return out;
  }

  tcn_config* EdConfig(int epochs) {
    tcn_config* config = nullptr;
    EXPECT_EQ(tcn_config_create(&config), TCN_OK);
    for (const auto& [k, v] : std::vector<std::pair<std::string, std::string>>{
             {"model", "ed_tcn"},
             {"L", "2"},
             {"d", "5"},
             {"filters", "8,8"},
             {"epochs", std::to_string(epochs)},
             {"learning_rate", "0.01"},
             {"seed", "3"}}) {
      EXPECT_EQ(tcn_config_set(config, k.c_str(), v.c_str()), TCN_OK)
          << tcn_last_error();
    }
    return config;
  }

  fs::path dir_;
};

TEST_F(CApiTest, VersionAndStatusNames) {
  EXPECT_STREQ(tcn_version(), "1.0.0");
  EXPECT_STREQ(tcn_status_name(TCN_OK), "ok");
  EXPECT_STRNE(tcn_status_name(TCN_ERR_PARSE), tcn_status_name(TCN_ERR_IO));
}

TEST_F(CApiTest, ReceptiveFields) {
  int64_t rf = 0;
  ASSERT_EQ(tcn_receptive_field_ed(15, 2, &rf), TCN_OK);
  EXPECT_EQ(rf, 46);
  ASSERT_EQ(tcn_receptive_field_dilated(4, 5, &rf), TCN_OK);
  EXPECT_EQ(rf, 128);
  EXPECT_EQ(tcn_receptive_field_ed(0, 2, &rf), TCN_ERR_CONFIG);
  EXPECT_NE(std::strlen(tcn_last_error()), 0u);
  EXPECT_EQ(tcn_receptive_field_ed(1, 1, nullptr), TCN_ERR_INVALID_ARGUMENT);
}

TEST_F(CApiTest, ConfigLifecycle) {
  tcn_config* config = EdConfig(4);
  EXPECT_EQ(tcn_config_validate(config), TCN_OK);
  EXPECT_EQ(tcn_config_set(config, "learnig_rate", "1"), TCN_ERR_CONFIG);
  EXPECT_NE(std::string(tcn_last_error()).find("learnig_rate"),
            std::string::npos);
  ASSERT_EQ(tcn_config_set(config, "tau", "10,50"), TCN_OK);
  double taus[8];
  size_t count = 8;
  ASSERT_EQ(tcn_config_taus(config, taus, &count), TCN_OK);
  ASSERT_EQ(count, 2u);
  EXPECT_EQ(taus[1], 0.5);
  int background = 0;
  ASSERT_EQ(tcn_config_background_id(config, &background), TCN_OK);
  EXPECT_EQ(background, -1);

  char* text = nullptr;
  ASSERT_EQ(tcn_config_format(config, &text), TCN_OK);
  std::ofstream(Path("run.cfg")) << text;
  tcn_string_free(text);
  tcn_config* read = nullptr;
  ASSERT_EQ(tcn_config_read(Path("run.cfg").c_str(), &read), TCN_OK)
      << tcn_last_error();
  tcn_config* clone = nullptr;
  ASSERT_EQ(tcn_config_clone(read, &clone), TCN_OK);
  EXPECT_EQ(tcn_config_validate(clone), TCN_OK);
  tcn_config_free(clone);
  tcn_config_free(read);
  tcn_config_free(config);

  std::ofstream(Path("bad.cfg")) << "model=ed_tcn\nL=2\n";
  EXPECT_EQ(tcn_config_read(Path("bad.cfg").c_str(), &read), TCN_ERR_CONFIG);
  EXPECT_EQ(tcn_config_read(Path("none.cfg").c_str(), &read), TCN_ERR_IO);
}

TEST_F(CApiTest, DatasetErrors) {
  tcn_dataset* ds = nullptr;
  EXPECT_EQ(tcn_dataset_open(Path("nowhere").c_str(), "train", &ds),
            TCN_ERR_IO);
  fs::create_directories(dir_ / "broken");
  std::ofstream(dir_ / "broken" / "manifest.txt") << "not a manifest\n";
  EXPECT_EQ(tcn_dataset_open(Path("broken").c_str(), "train", &ds),
            TCN_ERR_PARSE);
  EXPECT_EQ(tcn_dataset_open(nullptr, "train", &ds),
            TCN_ERR_INVALID_ARGUMENT);
}

void CountEpochs(int epoch, double loss, void* user) {
  auto* seen = static_cast<std::vector<double>*>(user);
  EXPECT_EQ(epoch, static_cast<int>(seen->size()) + 1);
  seen->push_back(loss);
}

TEST_F(CApiTest, TrainPredictEvaluateRoundTrip) {
  const std::string data = WriteSynth();
  tcn_dataset* train = nullptr;
  tcn_dataset* test = nullptr;
  ASSERT_EQ(tcn_dataset_open(data.c_str(), "train", &train), TCN_OK)
      << tcn_last_error();
  ASSERT_EQ(tcn_dataset_open(data.c_str(), "test", &test), TCN_OK);
  EXPECT_EQ(tcn_dataset_size(train), 8u);
  EXPECT_EQ(tcn_dataset_feature_dim(train), 3);
  EXPECT_EQ(tcn_dataset_num_classes(train), 5);
  EXPECT_STREQ(tcn_dataset_sequence_name(test, 0), "test_000");

  tcn_config* config = EdConfig(6);
  std::vector<double> seen;
  tcn_model* model = nullptr;
  ASSERT_EQ(tcn_train(config, train, CountEpochs, &seen, &model), TCN_OK)
      << tcn_last_error();
  const double* curve = nullptr;
  size_t n = 0;
  ASSERT_EQ(tcn_model_loss_curve(model, &curve, &n), TCN_OK);
  ASSERT_EQ(n, 6u);
  EXPECT_EQ(std::vector<double>(curve, curve + n), seen);
  int64_t rf = 0;
  ASSERT_EQ(tcn_model_receptive_field(model, &rf), TCN_OK);
  EXPECT_EQ(rf, 16);
  EXPECT_EQ(tcn_model_num_classes(model), 5);
  EXPECT_EQ(tcn_model_input_dim(model), 3);

  // Save, load and compare predictions on one frame-major input.
  ASSERT_EQ(tcn_model_save(model, Path("m.tcnm").c_str()), TCN_OK);
  tcn_model* loaded = nullptr;
  ASSERT_EQ(tcn_model_load(Path("m.tcnm").c_str(), &loaded), TCN_OK);
  std::vector<float> x(40 * 3);
  for (size_t i = 0; i < x.size(); ++i) x[i] = (i % 7) < 3 ? 1.0f : -1.0f;
  std::vector<int> la(40), lb(40);
  std::vector<float> pa(40 * 5), pb(40 * 5);
  ASSERT_EQ(tcn_predict(model, x.data(), 40, 3, la.data(), pa.data()), TCN_OK);
  ASSERT_EQ(tcn_predict(loaded, x.data(), 40, 3, lb.data(), pb.data()),
            TCN_OK);
  EXPECT_EQ(la, lb);
  EXPECT_EQ(pa, pb);
  EXPECT_EQ(tcn_predict(model, x.data(), 40, 2, la.data(), nullptr),
            TCN_ERR_DATA);

  char* description = nullptr;
  ASSERT_EQ(tcn_model_describe(model, &description), TCN_OK);
  EXPECT_NE(std::string(description).find("ed_tcn"), std::string::npos);
  tcn_string_free(description);

  // Predict the test split to disk and score it against the truth.
  ASSERT_EQ(tcn_predict_dataset(model, test, Path("pred").c_str()), TCN_OK)
      << tcn_last_error();
  tcn_eval_options options;
  tcn_eval_options_default(&options);
  tcn_report* from_dirs = nullptr;
  ASSERT_EQ(tcn_eval_dirs(Path("pred").c_str(), data.c_str(), &options,
                          &from_dirs),
            TCN_OK)
      << tcn_last_error();
  tcn_report* direct = nullptr;
  ASSERT_EQ(tcn_eval_model(model, test, &options, &direct), TCN_OK);
  double a = 0, b = 0;
  ASSERT_EQ(tcn_report_get(from_dirs, "F1@10", &a), TCN_OK);
  ASSERT_EQ(tcn_report_get(direct, "F1@10", &b), TCN_OK);
  EXPECT_EQ(a, b);
  ASSERT_EQ(tcn_report_get(direct, "mAP@mid[max]", &b), TCN_OK);
  EXPECT_EQ(tcn_report_get(direct, "F1@99", &b), TCN_ERR_INVALID_ARGUMENT);
  char* json = nullptr;
  ASSERT_EQ(tcn_report_json(direct, &json), TCN_OK);
  EXPECT_NE(std::string(json).find("\"metrics\""), std::string::npos);
  tcn_string_free(json);

  // Timelines of the first test sequence.
  const std::string truth = data + "/test/test_000.labels";
  const std::string pred = Path("pred") + "/test_000.labels";
  const char* preds[] = {pred.c_str()};
  ASSERT_EQ(tcn_timeline_render(truth.c_str(), preds, 1, Path("t.svg").c_str()),
            TCN_OK)
      << tcn_last_error();
  std::stringstream svg;
  svg << std::ifstream(Path("t.svg")).rdbuf();
  EXPECT_EQ(svg.str().rfind("<svg", 0), 0u);

  tcn_report_free(direct);
  tcn_report_free(from_dirs);
  tcn_model_free(loaded);
  tcn_model_free(model);
  tcn_config_free(config);
  tcn_dataset_free(test);
  tcn_dataset_free(train);
}

TEST_F(CApiTest, EvalLabelsWorkedCase) {
  const int truth[] = {0, 0, 0, 0, 1, 1, 1, 1};
  const int pred[] = {0, 0, 1, 1, 1, 1, 1, 1};
  tcn_eval_options options;
  tcn_eval_options_default(&options);
  tcn_report* report = nullptr;
  ASSERT_EQ(tcn_eval_labels(pred, truth, 8, &options, &report), TCN_OK);
  double acc = 0, edit = 0;
  ASSERT_EQ(tcn_report_get(report, "accuracy", &acc), TCN_OK);
  ASSERT_EQ(tcn_report_get(report, "edit", &edit), TCN_OK);
  EXPECT_EQ(acc, 75.0);
  EXPECT_EQ(edit, 100.0);
  tcn_report_free(report);
}

TEST_F(CApiTest, SynthIsDeterministic) {
  tcn_synth_options options;
  tcn_synth_options_default(&options);
  EXPECT_EQ(options.num_train, 50);
  EXPECT_EQ(options.num_test, 10);
  EXPECT_EQ(options.seq_len, 150);
  options.num_train = 2;
  options.num_test = 1;
  options.seed = 9;
  ASSERT_EQ(tcn_synth_write(&options, Path("a").c_str()), TCN_OK);
  ASSERT_EQ(tcn_synth_write(&options, Path("b").c_str()), TCN_OK);
  for (const auto& rel : {"manifest.txt", "train/train_001.csv",
                          "test/test_000.labels", "transitions.txt"}) {
    std::stringstream a, b;
    a << std::ifstream(dir_ / "a" / rel).rdbuf();
    b << std::ifstream(dir_ / "b" / rel).rdbuf();
    EXPECT_FALSE(a.str().empty()) << rel;
    EXPECT_EQ(a.str(), b.str()) << rel;
  }
  options.shift = 150;
  EXPECT_EQ(tcn_synth_write(&options, Path("c").c_str()), TCN_ERR_CONFIG);
}

}  // namespace
