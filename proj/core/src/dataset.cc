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

#include "sian/dataset.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

#include "sian/errors.h"
#include "sian/rng.h"

namespace sian {
namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

// Splits one CSV record; double quotes group commas and "" escapes a quote.
std::vector<std::string> SplitRecord(std::string_view line, size_t line_no) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cell += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cell += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      cells.emplace_back(Trim(cell));
      cell.clear();
    } else {
      cell += ch;
    }
  }
  if (quoted) throw DataError("unterminated quote", line_no);
  cells.emplace_back(Trim(cell));
  return cells;
}

bool IsMissing(std::string_view cell) {
  return cell.empty() || cell == "NA" || cell == "NaN" || cell == "nan" ||
         cell == "?";
}

double ParseNumber(std::string_view cell, const std::string& column,
                   size_t line_no) {
  double value = 0.0;
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size() ||
      !std::isfinite(value)) {
    throw DataError("column '" + column + "': cannot parse '" +
                        std::string(cell) + "' as a number",
                    line_no);
  }
  return value;
}

bool Contains(const std::vector<std::string>& names, const std::string& name) {
  return std::find(names.begin(), names.end(), name) != names.end();
}

}  // namespace

Dataset Dataset::Rows(std::span<const size_t> rows) const {
  Dataset out;
  out.feature_names = feature_names;
  out.head = head;
  out.x = Matrix(rows.size(), x.cols());
  out.y.resize(rows.size());
  for (size_t r = 0; r < rows.size(); ++r) {
    const auto src = x.row(rows[r]);
    std::copy(src.begin(), src.end(), out.x.row(r).begin());
    out.y[r] = y[rows[r]];
  }
  return out;
}

Dataset LoadCsv(const std::filesystem::path& path, const CsvSchema& schema,
                LoadReport* report) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open data file " + path.string());
  std::string line;
  if (!std::getline(in, line)) {
    throw DataError("file has no header row", 1);
  }
  const std::vector<std::string> header = SplitRecord(line, 1);
  const auto column_of = [&](const std::string& name) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
      throw ConfigError("column '" + name + "' not found in " + path.string());
    }
    return static_cast<size_t>(it - header.begin());
  };
  const size_t label_col = column_of(schema.label);
  for (const std::string& c : schema.categorical) column_of(c);
  for (const std::string& c : schema.ignore) column_of(c);

  std::vector<size_t> numeric_cols;
  std::vector<size_t> categorical_cols;
  for (size_t c = 0; c < header.size(); ++c) {
    if (c == label_col || Contains(schema.ignore, header[c])) continue;
    if (Contains(schema.categorical, header[c])) {
      categorical_cols.push_back(c);
    } else {
      numeric_cols.push_back(c);
    }
  }

  // Parse every row first; categories are only known at the end.
  struct Row {
    std::vector<double> numeric;
    std::vector<std::string> categories;
    double label;
  };
  std::vector<Row> rows;
  LoadReport counts;
  size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    ++counts.rows_read;
    const std::vector<std::string> cells = SplitRecord(line, line_no);
    if (cells.size() != header.size()) {
      throw DataError("expected " + std::to_string(header.size()) +
                          " cells, found " + std::to_string(cells.size()),
                      line_no);
    }
    bool missing = IsMissing(cells[label_col]);
    for (size_t c : numeric_cols) missing = missing || IsMissing(cells[c]);
    for (size_t c : categorical_cols) missing = missing || IsMissing(cells[c]);
    if (missing) {
      ++counts.rows_dropped;
      continue;
    }
    Row row;
    for (size_t c : numeric_cols) {
      row.numeric.push_back(ParseNumber(cells[c], header[c], line_no));
    }
    for (size_t c : categorical_cols) row.categories.push_back(cells[c]);
    row.label = ParseNumber(cells[label_col], header[label_col], line_no);
    if (schema.head.is_classification() && row.label != 0.0 && row.label != 1.0) {
      throw DataError("classification label must be 0 or 1", line_no);
    }
    rows.push_back(std::move(row));
  }

  std::vector<std::vector<std::string>> levels(categorical_cols.size());
  for (size_t k = 0; k < categorical_cols.size(); ++k) {
    std::set<std::string> seen;
    for (const Row& r : rows) seen.insert(r.categories[k]);
    levels[k].assign(seen.begin(), seen.end());
  }

  Dataset data;
  data.head = schema.head;
  for (size_t c : numeric_cols) data.feature_names.push_back(header[c]);
  for (size_t k = 0; k < categorical_cols.size(); ++k) {
    for (const std::string& v : levels[k]) {
      data.feature_names.push_back(header[categorical_cols[k]] + "=" + v);
    }
  }
  data.x = Matrix(rows.size(), data.feature_names.size());
  data.y.reserve(rows.size());
  for (size_t r = 0; r < rows.size(); ++r) {
    auto out = data.x.row(r);
    std::copy(rows[r].numeric.begin(), rows[r].numeric.end(), out.begin());
    size_t offset = rows[r].numeric.size();
    for (size_t k = 0; k < levels.size(); ++k) {
      const auto it = std::lower_bound(levels[k].begin(), levels[k].end(),
                                       rows[r].categories[k]);
      out[offset + static_cast<size_t>(it - levels[k].begin())] = 1.0;
      offset += levels[k].size();
    }
    data.y.push_back(rows[r].label);
  }
  if (report) *report = counts;
  return data;
}

void WriteCsv(const std::filesystem::path& path, const Dataset& data) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out.precision(17);
  for (const std::string& name : data.feature_names) out << name << ',';
  out << "y\n";
  for (size_t r = 0; r < data.num_rows(); ++r) {
    for (double v : data.x.row(r)) out << v << ',';
    out << data.y[r] << '\n';
  }
}

void SplitPlan::Validate() const {
  if (!(test_fraction >= 0.0 && test_fraction < 1.0)) {
    throw ConfigError("test fraction must lie in [0, 1)");
  }
  if (folds < 2) throw ConfigError("at least two folds are required");
}

std::vector<size_t> Split::TrainRows(size_t f) const {
  std::vector<size_t> rows;
  for (size_t g = 0; g < folds.size(); ++g) {
    if (g != f) rows.insert(rows.end(), folds[g].begin(), folds[g].end());
  }
  std::sort(rows.begin(), rows.end());
  return rows;
}

Split MakeSplit(size_t num_rows, const SplitPlan& plan) {
  plan.Validate();
  Rng rng(plan.seed);
  const std::vector<size_t> order = rng.Permutation(num_rows);
  const auto n_test = static_cast<size_t>(
      std::llround(static_cast<double>(num_rows) * plan.test_fraction));
  const size_t rest = num_rows - n_test;
  if (rest < plan.folds) {
    throw ConfigError("not enough rows for " + std::to_string(plan.folds) +
                      " folds");
  }
  Split split;
  split.test.assign(order.begin(), order.begin() + n_test);
  std::sort(split.test.begin(), split.test.end());
  size_t start = n_test;
  for (size_t f = 0; f < plan.folds; ++f) {
    const size_t size = rest / plan.folds + (f < rest % plan.folds ? 1 : 0);
    std::vector<size_t> fold(order.begin() + start, order.begin() + start + size);
    std::sort(fold.begin(), fold.end());
    split.folds.push_back(std::move(fold));
    start += size;
  }
  return split;
}

Standardizer Standardizer::Fit(const Dataset& train) {
  if (train.num_rows() == 0) throw DomainError("cannot standardize zero rows");
  const double n = static_cast<double>(train.num_rows());
  Standardizer s;
  for (size_t j = 0; j < train.num_features(); ++j) {
    double sum = 0.0;
    for (size_t r = 0; r < train.num_rows(); ++r) sum += train.x(r, j);
    const double mean = sum / n;
    double sq = 0.0;
    for (size_t r = 0; r < train.num_rows(); ++r) {
      const double d = train.x(r, j) - mean;
      sq += d * d;
    }
    const double sd = std::sqrt(sq / n);
    if (sd <= 1e-12 * std::max(1.0, std::abs(mean))) {
      s.dropped_.push_back(j < train.feature_names.size()
                               ? train.feature_names[j]
                               : std::to_string(j));
      continue;
    }
    s.kept_.push_back(j);
    s.mean_.push_back(mean);
    s.scale_.push_back(sd);
  }
  if (!train.head.is_classification()) {
    double sum = 0.0;
    for (double v : train.y) sum += v;
    s.target_mean_ = sum / n;
    double sq = 0.0;
    for (double v : train.y) sq += (v - s.target_mean_) * (v - s.target_mean_);
    const double sd = std::sqrt(sq / n);
    s.target_scale_ = sd > 0.0 ? sd : 1.0;
  }
  return s;
}

Dataset Standardizer::Transform(const Dataset& data) const {
  Dataset out;
  out.head = data.head;
  for (size_t j : kept_) {
    if (j >= data.num_features()) {
      throw ShapeError("data has fewer features than the standardizer");
    }
    out.feature_names.push_back(
        j < data.feature_names.size() ? data.feature_names[j] : std::to_string(j));
  }
  out.x = Matrix(data.num_rows(), kept_.size());
  for (size_t r = 0; r < data.num_rows(); ++r) {
    for (size_t k = 0; k < kept_.size(); ++k) {
      out.x(r, k) = (data.x(r, kept_[k]) - mean_[k]) / scale_[k];
    }
  }
  out.y.resize(data.y.size());
  for (size_t r = 0; r < data.y.size(); ++r) {
    out.y[r] = (data.y[r] - target_mean_) / target_scale_;
  }
  return out;
}

std::vector<double> Standardizer::InverseTarget(
    std::span<const double> values) const {
  std::vector<double> out(values.size());
  for (size_t i = 0; i < values.size(); ++i) {
    out[i] = values[i] * target_scale_ + target_mean_;
  }
  return out;
}

Standardizer Standardizer::FromParts(std::vector<size_t> kept,
                                     std::vector<std::string> dropped,
                                     std::vector<double> mean,
                                     std::vector<double> scale,
                                     double target_mean, double target_scale) {
  if (mean.size() != kept.size() || scale.size() != kept.size()) {
    throw ShapeError("standardizer parts differ in length");
  }
  for (double s : scale) {
    if (!(s > 0.0)) throw DomainError("standardizer scale must be positive");
  }
  if (!(target_scale > 0.0)) throw DomainError("target scale must be positive");
  Standardizer s;
  s.kept_ = std::move(kept);
  s.dropped_ = std::move(dropped);
  s.mean_ = std::move(mean);
  s.scale_ = std::move(scale);
  s.target_mean_ = target_mean;
  s.target_scale_ = target_scale;
  return s;
}

}  // namespace sian
