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

#include "sian/pipeline.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "sian/errors.h"
#include "sian/model_io.h"
#include "sian/rng.h"

namespace sian {
namespace {

namespace fs = std::filesystem;

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class PipelineTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("sian_pipeline_" +
            std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    // y = x0 + x1 * x2 with a constant column that standardization drops.
    std::ofstream csv(dir_ / "data.csv");
    csv.precision(17);
    csv << "x0,x1,x2,flat,y\n";
    Rng rng(42);
    for (int i = 0; i < 400; ++i) {
      const double a = rng.Normal();
      const double b = rng.Normal();
      const double c = rng.Normal();
      csv << a << ',' << b << ',' << c << ",1," << a + b * c << '\n';
    }
  }
  void TearDown() override { fs::remove_all(dir_); }

  nlohmann::json Config(const std::string& out) const {
    return {
        {"seed", 7},
        {"data", {{"path", "data.csv"}, {"test_fraction", 0.2}, {"folds", 2}}},
        {"dnn", {{"hidden_widths", {16, 8}}, {"epochs", 20}, {"lr", 0.02},
                 {"batch_size", 64}}},
        {"fis", {{"K", 2}, {"tau", 0.5}, {"theta", {0.01, 0.01}}, {"max_samples", 64}}},
        {"sian", {{"hidden_widths", {8, 4}}, {"epochs", 10}, {"lr", 0.02},
                  {"batch_size", 64}, {"mode", "block_sparse"}}},
        {"output_dir", out}};
  }

  ExperimentConfig Load(const std::string& out) const {
    std::ofstream(dir_ / "config.json") << Config(out).dump(2);
    return ExperimentConfig::Load(dir_ / "config.json");
  }

  fs::path dir_;
};

TEST_F(PipelineTest, ConfigPathsAreRelativeToTheConfigFile) {
  const ExperimentConfig c = Load("run");
  EXPECT_EQ(c.data_path, dir_ / "data.csv");
  EXPECT_EQ(c.output_dir, dir_ / "run");
  EXPECT_EQ(*c.seed, 7u);
  EXPECT_EQ(c.detection.fis.theta, (std::vector<double>{0.01, 0.01}));
  EXPECT_EQ(c.sian_mode, ExecutionMode::kBlockSparse);
  EXPECT_EQ(c.split.folds, 2u);
}

TEST_F(PipelineTest, ConfigRejectsUnknownKeysAndBadValues) {
  nlohmann::json doc = Config("run");
  doc["fis"]["gamma"] = 1;
  EXPECT_THROW(ExperimentConfig::FromJson(doc, dir_), ConfigError);
  doc = Config("run");
  doc["dnn"]["lr"] = -1;
  EXPECT_THROW(ExperimentConfig::FromJson(doc, dir_), ConfigError);
  doc = Config("run");
  doc["fis"]["tau"] = "half";
  EXPECT_THROW(ExperimentConfig::FromJson(doc, dir_), ConfigError);
  doc = Config("run");
  doc["fis"]["theta"] = 0.3;
  EXPECT_EQ(ExperimentConfig::FromJson(doc, dir_).detection.fis.theta,
            std::vector<double>{0.3});
  EXPECT_THROW(ExperimentConfig::Load(dir_ / "missing.json"), ConfigError);
  std::ofstream(dir_ / "broken.json") << "{";
  EXPECT_THROW(ExperimentConfig::Load(dir_ / "broken.json"), ConfigError);
}

TEST_F(PipelineTest, SeedIsRequired) {
  ExperimentConfig c = Load("run");
  c.seed.reset();
  std::ostringstream log;
  EXPECT_THROW(RunCommand("train-dnn", c, {}, log), ConfigError);
  EXPECT_THROW(RunCommand("nope", c, {}, log), ConfigError);
}

TEST_F(PipelineTest, FullRunIsDeterministic) {
  std::ostringstream log;
  for (const char* out : {"a", "b"}) {
    const ExperimentConfig c = Load(out);
    for (const char* cmd : {"train-dnn", "fis", "train-sian", "evaluate"}) {
      ASSERT_EQ(RunCommand(cmd, c, {}, log), 0) << cmd;
    }
  }
  for (const char* file : {"fold_0/family.json", "fold_1/family.json",
                           "fold_0/scores.csv", "fold_0/sian.json",
                           "dnn_metrics.json", "sian_metrics.json",
                           "evaluate_metrics.json"}) {
    const std::string a = Slurp(dir_ / "a" / file);
    ASSERT_FALSE(a.empty()) << file;
    EXPECT_EQ(a, Slurp(dir_ / "b" / file)) << file;
  }
  // The dropped constant column leaves three features.
  const nlohmann::json family = ReadJsonFile(dir_ / "a/fold_0/family.json");
  EXPECT_EQ(family["num_features"], 3);
  const ModelArtifact artifact =
      ModelArtifact::FromJson(ReadJsonFile(dir_ / "a/fold_0/sian.json"));
  EXPECT_EQ(artifact.sian->mode(), ExecutionMode::kBlockSparse);
  EXPECT_EQ(artifact.standardizer.dropped_features(),
            std::vector<std::string>{"flat"});
}

TEST_F(PipelineTest, BiasOnlyFamilyPredictsTheMean) {
  const ExperimentConfig c = Load("run");
  InteractionFamily empty;
  WriteJsonFile(dir_ / "empty.json", FamilyToJson(empty, 3));
  CommandOptions options;
  options.family = dir_ / "empty.json";
  std::ostringstream log;
  ASSERT_EQ(RunCommand("train-sian", c, options, log), 0);
  const nlohmann::json metrics = ReadJsonFile(dir_ / "run/sian_metrics.json");
  // Standardized targets have unit variance on the training rows.
  EXPECT_NEAR(metrics["mse"]["mean"].get<double>(), 1.0, 0.35);

  WriteJsonFile(dir_ / "wide.json", FamilyToJson(empty, 5));
  options.family = dir_ / "wide.json";
  EXPECT_THROW(RunCommand("train-sian", c, options, log), ValidationError);
}

TEST_F(PipelineTest, ExportWritesOneCsvPerSet) {
  const ExperimentConfig c = Load("run");
  InteractionFamily family;
  family.Add({{0}, 1.0, 1.0});
  family.Add({{1, 2}, 1.0, 1.0});
  WriteJsonFile(dir_ / "family.json", FamilyToJson(family, 3));
  CommandOptions options;
  options.family = dir_ / "family.json";
  std::ostringstream log;
  ASSERT_EQ(RunCommand("train-sian", c, options, log), 0);
  ASSERT_EQ(RunCommand("export-shapes", c, {}, log), 0);
  std::ifstream single(dir_ / "run/shapes/shape_0.csv");
  std::string line;
  std::getline(single, line);
  EXPECT_EQ(line, "x0,value");
  size_t rows = 0;
  while (std::getline(single, line)) ++rows;
  EXPECT_EQ(rows, 256u);
  std::ifstream pair(dir_ / "run/shapes/shape_1+2.csv");
  std::getline(pair, line);
  EXPECT_EQ(line, "x1,x2,value");
  rows = 0;
  while (std::getline(pair, line)) ++rows;
  EXPECT_EQ(rows, 64u * 64u);
}

TEST_F(PipelineTest, CorruptModelIsFormatError) {
  const ExperimentConfig c = Load("run");
  std::ofstream(dir_ / "bad.json") << R"({"format": "sian-artifact"})";
  CommandOptions options;
  options.model = dir_ / "bad.json";
  std::ostringstream log;
  EXPECT_THROW(RunCommand("fis", c, options, log), FormatError);
}

TEST(ExitCodeTest, UserErrorsMapToTwo) {
  EXPECT_EQ(ExitCodeFor(ConfigError("x")), 2);
  EXPECT_EQ(ExitCodeFor(DataError("x", 3)), 2);
  EXPECT_EQ(ExitCodeFor(FormatError("x")), 2);
  EXPECT_EQ(ExitCodeFor(ValidationError("x")), 2);
  EXPECT_EQ(ExitCodeFor(NumericError("x")), 1);
  EXPECT_EQ(ExitCodeFor(std::runtime_error("x")), 1);
}

}  // namespace
}  // namespace sian
