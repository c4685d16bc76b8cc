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

#ifndef SIAN_DATASET_H_
#define SIAN_DATASET_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "sian/loss.h"
#include "sian/tensor.h"

namespace sian {

struct Dataset {
  std::vector<std::string> feature_names;
  Matrix x;
  std::vector<double> y;
  TaskHead head;

  size_t num_rows() const { return x.rows(); }
  size_t num_features() const { return x.cols(); }
  // Dataset restricted to the given rows, in that order.
  Dataset Rows(std::span<const size_t> rows) const;
};

struct CsvSchema {
  // Name of the target column.
  std::string label = "y";
  // Columns expanded into one indicator column per distinct value.
  std::vector<std::string> categorical;
  // Columns ignored entirely.
  std::vector<std::string> ignore;
  TaskHead head;
};

struct LoadReport {
  size_t rows_read = 0;
  size_t rows_dropped = 0;
};

// Reads a CSV with a header row. Numeric columns keep header order; the
// indicator columns of each categorical column ("name=value", values sorted)
// follow in header order. Rows with an empty, "NA", "NaN" or "?" cell are
// dropped. Throws ConfigError when the file or a named column is missing and
// DataError (with the 1-based line number) on an unparseable cell or a
// classification label other than 0/1.
Dataset LoadCsv(const std::filesystem::path& path, const CsvSchema& schema,
                LoadReport* report = nullptr);

// Writes features then the label column "y", full precision.
void WriteCsv(const std::filesystem::path& path, const Dataset& data);

struct SplitPlan {
  double test_fraction = 0.2;
  size_t folds = 5;
  uint64_t seed = 0;

  // Throws ConfigError.
  void Validate() const;
};

// Rows of a test split and of the folds that partition the remaining rows.
// Each list is sorted ascending.
struct Split {
  std::vector<size_t> test;
  std::vector<std::vector<size_t>> folds;

  // Training rows when fold `f` is held out for validation.
  std::vector<size_t> TrainRows(size_t f) const;
};

// Shuffles the row indices with the plan's seed, takes the first
// round(n * test_fraction) as the test split and cuts the rest into
// contiguous folds whose sizes differ by at most one.
Split MakeSplit(size_t num_rows, const SplitPlan& plan);

// Per-feature standardization with statistics from the training rows
// (population standard deviation). Features whose standard deviation is zero
// are dropped. Regression targets are standardized too; classification
// targets are left alone.
class Standardizer {
 public:
  static Standardizer Fit(const Dataset& train);

  const std::vector<size_t>& kept_features() const { return kept_; }
  const std::vector<std::string>& dropped_features() const { return dropped_; }
  const std::vector<double>& mean() const { return mean_; }
  const std::vector<double>& scale() const { return scale_; }
  double target_mean() const { return target_mean_; }
  double target_scale() const { return target_scale_; }

  Dataset Transform(const Dataset& data) const;
  // Maps model outputs in standardized target units back to the data units.
  std::vector<double> InverseTarget(std::span<const double> values) const;

  static Standardizer FromParts(std::vector<size_t> kept,
                                std::vector<std::string> dropped,
                                std::vector<double> mean,
                                std::vector<double> scale, double target_mean,
                                double target_scale);

 private:
  // Over the kept features only.
  std::vector<size_t> kept_;
  std::vector<std::string> dropped_;
  std::vector<double> mean_;
  std::vector<double> scale_;
  double target_mean_ = 0.0;
  double target_scale_ = 1.0;
};

}  // namespace sian

#endif  // SIAN_DATASET_H_
