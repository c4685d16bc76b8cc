/*
 * Copyright 2026 The SIAN Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Runs the sian executable and checks exit codes, messages and artifacts.

#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "sian/model_io.h"
#include "sian/rng.h"

namespace sian {
namespace {

namespace fs = std::filesystem;

struct RunResult {
  int code = -1;
  std::string output;
};

// Runs the tool with stderr folded into the captured output.
RunResult RunSian(const std::string& args) {
  const std::string command = std::string(SIAN_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(command.c_str(), "r");
  RunResult result;
  if (pipe == nullptr) return result;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) result.output.append(buf.data(), n);
  const int status = pclose(pipe);
  result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

// Index lists of a family file, in file order.
nlohmann::json Sets(const fs::path& path) {
  nlohmann::json out = nlohmann::json::array();
  const nlohmann::json doc = ReadJsonFile(path);
  for (const auto& s : doc.at("sets")) out.push_back(s.at("indices"));
  return out;
}

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("sian_cli_" +
            std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  // Writes n rows of three uniform features and target(x0, x1, x2).
  template <typename F>
  void WriteData(const std::string& name, size_t n, F target) {
    std::ofstream csv(dir_ / name);
    csv.precision(17);
    csv << "x0,x1,x2,y\n";
    Rng rng(5);
    for (size_t i = 0; i < n; ++i) {
      const double a = rng.Uniform(-1, 1);
      const double b = rng.Uniform(-1, 1);
      const double c = rng.Uniform(-1, 1);
      csv << a << ',' << b << ',' << c << ',' << target(a, b, c) << '\n';
    }
  }

  fs::path WriteConfig(const nlohmann::json& patch) {
    nlohmann::json doc = {
        {"seed", 1},
        {"data", {{"path", "data.csv"}, {"test_fraction", 0.2}, {"folds", 2}}},
        {"dnn", {{"hidden_widths", {32, 16}}, {"epochs", 60}, {"lr", 0.02},
                 {"batch_size", 32}}},
        {"fis", {{"K", 2}, {"tau", 0.5}, {"theta", {0.01}}, {"max_samples", 128}}},
        {"sian", {{"hidden_widths", {8, 4}}, {"epochs", 15}, {"lr", 0.02},
                  {"batch_size", 64}, {"mode", "block_sparse"}}},
        {"output_dir", "out"}};
    doc.merge_patch(patch);
    const fs::path path = dir_ / "config.json";
    std::ofstream(path) << doc.dump(2);
    return path;
  }

  std::string Cfg(const nlohmann::json& patch = nlohmann::json::object()) {
    return "--config " + WriteConfig(patch).string();
  }

  fs::path dir_;
};

TEST_F(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(RunSian("").code, 2);
  EXPECT_EQ(RunSian("frobnicate").code, 2);
  EXPECT_EQ(RunSian("oracle bogus").code, 2);
}

TEST_F(CliTest, MissingDataNamesThePath) {
  const RunResult r = RunSian("train-dnn " + Cfg({{"data", {{"path", "absent.csv"}}}}));
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.output.find("absent.csv"), std::string::npos) << r.output;
}

TEST_F(CliTest, MissingSeedIsConfigError) {
  const RunResult r = RunSian("train-dnn " + Cfg({{"seed", nullptr}}));
  EXPECT_EQ(r.code, 2) << r.output;
}

TEST_F(CliTest, DnnLearnsAProduct) {
  WriteData("data.csv", 1000, [](double a, double b, double) { return a * b; });
  const std::string cfg = Cfg({{"dnn", {{"epochs", 150}}}});
  ASSERT_EQ(RunSian("train-dnn " + cfg).code, 0);
  const nlohmann::json m = ReadJsonFile(dir_ / "out/dnn_metrics.json");
  // Standardized units: the product has variance 1/9 before scaling.
  EXPECT_LT(m["mse"]["mean"].get<double>(), 0.1) << m.dump();
}

TEST_F(CliTest, FisThresholdsShapeTheFamily) {
  WriteData("data.csv", 1000,
            [](double a, double b, double c) { return a + b * c; });
  ASSERT_EQ(RunSian("train-dnn " + Cfg({{"dnn", {{"epochs", 150}}}})).code, 0);

  ASSERT_EQ(RunSian("fis " + Cfg({{"fis", {{"theta", {1e9}}}}})).code, 0);
  EXPECT_TRUE(Sets(dir_ / "out/fold_0/family.json").empty());

  ASSERT_EQ(RunSian("fis " + Cfg({{"fis", {{"K", 1}}}})).code, 0);
  EXPECT_EQ(Sets(dir_ / "out/fold_0/family.json"),
            nlohmann::json::parse("[[0],[1],[2]]"));

  // Secants of a fitted network give additive pairs a small nonzero score.
  ASSERT_EQ(RunSian("fis " + Cfg({{"fis", {{"theta", {0.01, 0.2}}}}})).code, 0);
  EXPECT_EQ(Sets(dir_ / "out/fold_0/family.json"),
            nlohmann::json::parse("[[0],[1],[2],[1,2]]"));
}

TEST_F(CliTest, BiasOnlyFamilyAndExport) {
  WriteData("data.csv", 400, [](double a, double, double) { return a; });
  std::ofstream(dir_ / "empty.json")
      << R"({"format": "sian-family", "version": 1, "num_features": 3, "sets": []})";
  RunResult r = RunSian("train-sian " + Cfg() + " --family " + (dir_ / "empty.json").string());
  ASSERT_EQ(r.code, 0) << r.output;
  const nlohmann::json m = ReadJsonFile(dir_ / "out/sian_metrics.json");
  EXPECT_NEAR(m["mse"]["mean"].get<double>(), 1.0, 0.35);

  std::ofstream(dir_ / "single.json")
      << R"({"format": "sian-family", "version": 1, "num_features": 3, "sets": [{"indices": [0]}]})";
  r = RunSian("train-sian " + Cfg() + " --family " + (dir_ / "single.json").string());
  ASSERT_EQ(r.code, 0) << r.output;
  r = RunSian("export-shapes " + Cfg());
  ASSERT_EQ(r.code, 0) << r.output;
  std::ifstream shape(dir_ / "out/shapes/shape_0.csv");
  std::string line;
  size_t rows = 0;
  std::getline(shape, line);
  while (std::getline(shape, line)) ++rows;
  EXPECT_EQ(rows, 256u);
}

TEST_F(CliTest, LinearModelRoundTripsExactly) {
  WriteData("data.csv", 300,
            [](double a, double b, double c) { return 2 * a - b + 0.5 * c; });
  ASSERT_EQ(RunSian("train-dnn " + Cfg()).code, 0);
  ASSERT_EQ(RunSian("fis " + Cfg()).code, 0);
  ASSERT_EQ(RunSian("train-sian " + Cfg()).code, 0);
  const fs::path model = dir_ / "out/fold_0/sian.json";
  const nlohmann::json doc = ReadJsonFile(model);
  // Writing the parsed document back reproduces the file byte for byte.
  WriteJsonFile(dir_ / "copy.json", doc, -1);
  EXPECT_EQ(Slurp(model), Slurp(dir_ / "copy.json"));
  ASSERT_EQ(RunSian("evaluate " + Cfg() + " --model " + model.string()).code, 0);
  const std::string first = Slurp(dir_ / "out/evaluate_metrics.json");
  ASSERT_EQ(RunSian("evaluate " + Cfg() + " --model " + (dir_ / "copy.json").string()).code,
            0);
  EXPECT_EQ(first, Slurp(dir_ / "out/evaluate_metrics.json"));
}

TEST_F(CliTest, PipelineIsByteDeterministic) {
  WriteData("data.csv", 300, [](double a, double b, double c) { return a * b + c; });
  for (const char* out : {"run_a", "run_b"}) {
    const std::string cfg = Cfg({{"output_dir", out}});
    for (const char* cmd : {"train-dnn", "fis", "train-sian", "evaluate"}) {
      ASSERT_EQ(RunSian(std::string(cmd) + " " + cfg).code, 0) << cmd;
    }
  }
  for (const char* file : {"fold_0/dnn.json", "fold_1/family.json", "fold_1/sian.json",
                           "evaluate_metrics.json"}) {
    EXPECT_EQ(Slurp(dir_ / "run_a" / file), Slurp(dir_ / "run_b" / file)) << file;
  }
}

TEST_F(CliTest, OracleLemmaReportsNoFailures) {
  const RunResult r = RunSian("oracle lemma --out " + dir_.string());
  ASSERT_EQ(r.code, 0) << r.output;
  const nlohmann::json report = ReadJsonFile(dir_ / "oracle_lemma.json");
  EXPECT_EQ(report["failures"], 0);
}

}  // namespace
}  // namespace sian
