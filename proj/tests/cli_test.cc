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

// End-to-end checks of the `tcn` command-line tool, run as a subprocess.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "testing/oracles.h"

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string Slurp(const fs::path& path) {
  std::stringstream s;
  s << std::ifstream(path, std::ios::binary).rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  RunResult Run(const std::string& args) {
    const fs::path out = dir_.path() / "stdout.txt";
    const fs::path err = dir_.path() / "stderr.txt";
    const std::string command = std::string(TCN_CLI_PATH) + " " + args +
                                " >" + out.string() + " 2>" + err.string();
    const int status = std::system(command.c_str());
    RunResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = Slurp(out);
    r.err = Slurp(err);
    return r;
  }

  std::string P(const std::string& name) const {
    return (dir_.path() / name).string();
  }

  void Write(const std::string& name, const std::string& text) {
    fs::create_directories((dir_.path() / name).parent_path());
    std::ofstream(dir_.path() / name) << text;
  }

  // Small, fast dataset: 10 train / 3 test sequences of 60 frames.
  std::string SmallData(const std::string& name = "data") {
    const RunResult r = Run("synth --out " + P(name) +
                            " --num-train 10 --num-test 3 --seq-len 60 "
                            "--seed 4");
    EXPECT_EQ(r.code, 0) << r.err;
    return P(name);
  }

  std::string EdConfig() {
    Write("ed.cfg",
          "model=ed_tcn\nL=2\nd=5\nfilters=8,8\nepochs=5\n"
          "learning_rate=0.01\nseed=1\n");
    return P("ed.cfg");
  }

  static int Lines(const std::string& s) {
    int n = 0;
    for (char c : s) n += c == '\n';
    return n;
  }

  tcn::testing::ScopedTempDir dir_;
};

TEST_F(CliTest, SynthDefaults) {
  const RunResult r = Run("synth --out " + P("d"));
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string manifest = Slurp(P("d") + "/manifest.txt");
  int train = 0, test = 0;
  std::istringstream in(manifest);
  std::string line;
  while (std::getline(in, line)) {
    train += line.rfind("sequence train ", 0) == 0;
    test += line.rfind("sequence test ", 0) == 0;
  }
  EXPECT_EQ(train, 50);
  EXPECT_EQ(test, 10);
  EXPECT_EQ(Lines(Slurp(P("d") + "/train/train_000.labels")), 150);
}

TEST_F(CliTest, SynthSameSeedSameFiles) {
  ASSERT_EQ(Run("synth --out " + P("a") + " --seed 3 --num-train 3").code, 0);
  ASSERT_EQ(Run("synth --out " + P("b") + " --seed 3 --num-train 3").code, 0);
  for (const auto& entry : fs::recursive_directory_iterator(P("a"))) {
    if (!entry.is_regular_file()) continue;
    const auto rel = fs::relative(entry.path(), P("a"));
    EXPECT_EQ(Slurp(entry.path()), Slurp(fs::path(P("b")) / rel)) << rel;
  }
}

TEST_F(CliTest, SynthShiftDelaysFeatures) {
  ASSERT_EQ(Run("synth --out " + P("plain") + " --seed 2 --num-train 1").code,
            0);
  ASSERT_EQ(Run("synth --spec shift --shift 10 --out " + P("shifted") +
                " --seed 2 --num-train 1")
                .code,
            0);
  std::vector<std::string> plain, shifted;
  std::istringstream a(Slurp(P("plain") + "/train/train_000.csv"));
  std::istringstream b(Slurp(P("shifted") + "/train/train_000.csv"));
  for (std::string l; std::getline(a, l);) plain.push_back(l);
  for (std::string l; std::getline(b, l);) shifted.push_back(l);
  ASSERT_EQ(plain.size(), 150u);
  ASSERT_EQ(shifted.size(), 150u);
  for (size_t t = 10; t < 150; ++t) EXPECT_EQ(shifted[t], plain[t - 10]);
  EXPECT_EQ(Slurp(P("plain") + "/train/train_000.labels"),
            Slurp(P("shifted") + "/train/train_000.labels"));
}

TEST_F(CliTest, TrainPredictEvalTimeline) {
  const std::string data = SmallData();
  RunResult r = Run("train --config " + EdConfig() + " --data " + data +
                    " --out " + P("m.tcnm") + " --quiet");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(P("m.tcnm")));
  EXPECT_EQ(Lines(Slurp(P("m.tcnm.loss.csv"))), 6);

  r = Run("predict --model " + P("m.tcnm") + " --data " + data + " --out " +
          P("pred"));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(P("pred") + "/predictions.txt"));

  r = Run("eval --pred " + P("pred") + " --truth " + data);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("F1@10="), std::string::npos);
  EXPECT_NE(r.out.find("mAP@mid[mean]="), std::string::npos);
  EXPECT_NE(r.out.find("mAP@mid[max]="), std::string::npos);

  r = Run("eval --json --pred " + P("pred") + " --truth " + data);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("{", 0), 0u);

  r = Run("timeline --truth " + data + "/test/test_001.labels --pred " +
          P("pred") + "/test_001.labels --out " + P("t.svg"));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(Slurp(P("t.svg")).find("data-class"), std::string::npos);
}

TEST_F(CliTest, TrainingIsDeterministic) {
  const std::string data = SmallData();
  const std::string config = EdConfig();
  for (const char* name : {"a.tcnm", "b.tcnm"}) {
    ASSERT_EQ(Run("train --quiet --config " + config + " --data " + data +
                  " --out " + P(name))
                  .code,
              0);
  }
  EXPECT_EQ(Slurp(P("a.tcnm")), Slurp(P("b.tcnm")));
}

TEST_F(CliTest, EvalWorkedOverSegmentationCase) {
  // truth A(0..10) B(10..20); the prediction breaks A with one frame of the
  // ignored class 2, leaving A(0..5) and A(6..10): at tau 0.5 the first
  // matches (IoU 0.5), the second is a false positive -> F1 80.
  std::string truth_labels, pred_labels, features;
  for (int t = 0; t < 20; ++t) {
    truth_labels += t < 10 ? "0\n" : "1\n";
    pred_labels += t < 5 ? "0\n" : t == 5 ? "2\n" : t < 10 ? "0\n" : "1\n";
    features += "0\n";
  }
  Write("truth/manifest.txt",
        "tcn-dataset 1\nfeature_dim 1\nclass 0 A\nclass 1 B\nclass 2 bg\n"
        "sequence test s test/s.csv test/s.labels\n");
  Write("truth/test/s.csv", features);
  Write("truth/test/s.labels", truth_labels);
  Write("pred/predictions.txt",
        "tcn-predictions 1\nnum_classes 3\nprediction s s.labels -\n");
  Write("pred/s.labels", pred_labels);
  const RunResult r = Run("eval --pred " + P("pred") + " --truth " +
                          P("truth") + " --tau 50 --background-id 2");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("\nF1@50=80.0000\n"), std::string::npos) << r.out;
}

TEST_F(CliTest, EvalIdenticalScoresHundred) {
  const std::string data = SmallData();
  std::string manifest = "tcn-predictions 1\nnum_classes 5\n";
  for (const char* name : {"test_000", "test_001", "test_002"}) {
    manifest += std::string("prediction ") + name + " " + name + ".labels -\n";
    Write(std::string("pred/") + name + ".labels",
          Slurp(data + "/test/" + name + ".labels"));
  }
  Write("pred/predictions.txt", manifest);
  const RunResult r = Run("eval --pred " + P("pred") + " --truth " + data);
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  for (std::string line; std::getline(in, line);) {
    if (line.rfind("num_", 0) == 0) continue;
    EXPECT_NE(line.find("=100.0000"), std::string::npos) << line;
  }
}

TEST_F(CliTest, ReceptiveField) {
  RunResult r = Run("rf --model ed --d 15 --L 2");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "46\n");
  r = Run("rf --model dilated --B 4 --L 5");
  EXPECT_EQ(r.out, "128\n");
}

TEST_F(CliTest, SweepEmitsOneRowPerValue) {
  const std::string data = SmallData();
  const std::string config = EdConfig();
  const std::string args = "sweep --config " + config + " --data " + data +
                           " --param d --values 1,5,10 --epochs 2";
  const RunResult a = Run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  std::istringstream in(a.out);
  std::vector<std::string> lines;
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(lines[0], "value,receptive_field,F1@25,accuracy,status");
  EXPECT_EQ(lines[1].rfind("1,4,", 0), 0u);
  EXPECT_EQ(lines[2].rfind("5,16,", 0), 0u);
  EXPECT_EQ(lines[3].rfind("10,31,", 0), 0u);
  EXPECT_EQ(Run(args).out, a.out);
}

TEST_F(CliTest, FailuresExitNonzeroWithOneLine) {
  const std::string data = SmallData();
  RunResult r = Run("train --config " + EdConfig() + " --data " + data +
                    " --out " + P("m.tcnm") + " --epochs 0");
  EXPECT_NE(r.code, 0);
  EXPECT_EQ(Lines(r.err), 1) << r.err;

  Write("typo.cfg", "model=ed_tcn\nL=2\nd=5\nlearnig_rate=0.1\n");
  r = Run("train --config " + P("typo.cfg") + " --data " + data + " --out " +
          P("m.tcnm"));
  EXPECT_NE(r.code, 0);
  EXPECT_EQ(Lines(r.err), 1) << r.err;
  EXPECT_NE(r.err.find("learnig_rate"), std::string::npos);

  r = Run("predict --model " + P("absent.tcnm") + " --data " + data +
          " --out " + P("p"));
  EXPECT_NE(r.code, 0);
  EXPECT_EQ(Lines(r.err), 1) << r.err;

  r = Run("frobnicate");
  EXPECT_NE(r.code, 0);
}

}  // namespace
