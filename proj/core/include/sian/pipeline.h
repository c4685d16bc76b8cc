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

#ifndef SIAN_PIPELINE_H_
#define SIAN_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sian/dataset.h"
#include "sian/fis.h"
#include "sian/mlp.h"
#include "sian/sian_model.h"
#include "sian/training.h"

namespace sian {

struct NetworkConfig {
  std::vector<size_t> hidden_widths;
  TrainConfig train;
};

struct DetectionConfig {
  FisConfig fis;
  size_t max_samples = 1024;
  // "zero" (the standardized feature mean) or "reflect".
  std::string baseline = "zero";
};

struct ExperimentConfig {
  std::optional<uint64_t> seed;
  std::filesystem::path data_path;
  CsvSchema schema;
  SplitPlan split;
  NetworkConfig dnn{{256, 128, 64}, {}};
  DetectionConfig detection;
  NetworkConfig sian{{16, 12, 8}, {}};
  ExecutionMode sian_mode = ExecutionMode::kBlockSparse;
  // Range of every axis of exported shape grids, in standardized units. When
  // unset, each feature spans its training-fold minimum and maximum.
  std::optional<double> export_lo;
  std::optional<double> export_hi;
  std::filesystem::path output_dir = "out";

  // Relative paths are resolved against base_dir. Throws ConfigError.
  static ExperimentConfig FromJson(const nlohmann::json& doc,
                                   const std::filesystem::path& base_dir);
  static ExperimentConfig Load(const std::filesystem::path& path);
};

// Command-line overrides.
struct CommandOptions {
  std::optional<uint64_t> seed;
  std::optional<std::filesystem::path> out;
  std::optional<std::filesystem::path> model;
  std::optional<std::filesystem::path> family;
  std::optional<std::filesystem::path> data;
  std::string suite = "all";
};

// A trained network saved with everything needed to apply it to raw data.
struct ModelArtifact {
  enum class Kind { kDnn, kSian };
  Kind kind = Kind::kSian;
  size_t fold = 0;
  std::vector<std::string> feature_names;
  Standardizer standardizer;
  // Per-feature range of the standardized training rows.
  std::vector<double> feature_min;
  std::vector<double> feature_max;
  TaskHead head;
  Mlp dnn;
  std::optional<SianModel> sian;

  // Model output (standardized target units or logits) for standardized rows.
  std::vector<double> Predict(const Matrix& standardized) const;

  nlohmann::json ToJson() const;
  static ModelArtifact FromJson(const nlohmann::json& doc);
};

nlohmann::json StandardizerToJson(const Standardizer& s);
Standardizer StandardizerFromJson(const nlohmann::json& doc);

// Subcommands. Each writes its artifacts under the output directory and logs
// one line per step to `log`. Files per fold go to <out>/fold_<f>/.
//   train-dnn      fold_<f>/dnn.json, dnn_metrics.json
//   fis            fold_<f>/family.json, fold_<f>/scores.csv
//   train-sian     fold_<f>/sian.json, sian_metrics.json
//   evaluate       evaluate_metrics.json
//   export-shapes  shapes/shape_<i+j>.csv
//   oracle         oracle_<suite>.json
// Returns the process exit code: 0 on success, 1 when an oracle check fails.
// Errors are thrown.
int RunCommand(const std::string& command, const ExperimentConfig& config,
               const CommandOptions& options, std::ostream& log);

// Maps an exception to the exit code of the command-line tool: 2 for user
// and configuration errors, 1 for everything else.
int ExitCodeFor(const std::exception& e);

}  // namespace sian

#endif  // SIAN_PIPELINE_H_
