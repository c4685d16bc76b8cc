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

#include "sian/metrics.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sian/errors.h"

namespace sian {
namespace {

void CheckLengths(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw ShapeError("predictions and targets differ in length");
  }
  if (a.empty()) throw DomainError("metric of an empty set");
}

// Counts of positives and negatives; rejects non-binary or single-class labels.
std::pair<size_t, size_t> ClassCounts(std::span<const double> labels) {
  size_t pos = 0;
  for (double l : labels) {
    if (l == 1.0) {
      ++pos;
    } else if (l != 0.0) {
      throw DomainError("labels must be 0 or 1");
    }
  }
  if (pos == 0 || pos == labels.size()) {
    throw DomainError("ranking metrics are undefined with a single class");
  }
  return {pos, labels.size() - pos};
}

// Indices sorted by descending score.
std::vector<size_t> ByScoreDescending(std::span<const double> scores) {
  std::vector<size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return scores[a] > scores[b]; });
  return order;
}

}  // namespace

double MeanSquaredError(std::span<const double> predictions,
                        std::span<const double> targets) {
  CheckLengths(predictions, targets);
  double sum = 0.0;
  for (size_t i = 0; i < predictions.size(); ++i) {
    const double d = predictions[i] - targets[i];
    sum += d * d;
  }
  return sum / static_cast<double>(predictions.size());
}

double Auroc(std::span<const double> scores, std::span<const double> labels) {
  CheckLengths(scores, labels);
  const auto [pos, neg] = ClassCounts(labels);
  std::vector<size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return scores[a] < scores[b]; });
  // Sum of mid-ranks (1-based) of the positives.
  double rank_sum = 0.0;
  for (size_t i = 0; i < order.size();) {
    size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
    const double mid = 0.5 * static_cast<double>(i + 1 + j);
    for (size_t k = i; k < j; ++k) {
      if (labels[order[k]] == 1.0) rank_sum += mid;
    }
    i = j;
  }
  const double p = static_cast<double>(pos);
  const double u = rank_sum - p * (p + 1.0) / 2.0;
  return u / (p * static_cast<double>(neg));
}

double Auprc(std::span<const double> scores, std::span<const double> labels) {
  CheckLengths(scores, labels);
  const size_t pos = ClassCounts(labels).first;
  const std::vector<size_t> order = ByScoreDescending(scores);
  double area = 0.0;
  size_t true_pos = 0;
  double prev_recall = 0.0;
  for (size_t i = 0; i < order.size();) {
    size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) {
      if (labels[order[j]] == 1.0) ++true_pos;
      ++j;
    }
    const double recall =
        static_cast<double>(true_pos) / static_cast<double>(pos);
    const double precision =
        static_cast<double>(true_pos) / static_cast<double>(j);
    area += (recall - prev_recall) * precision;
    prev_recall = recall;
    i = j;
  }
  return area;
}

std::map<std::string, double> TaskMetrics(const TaskHead& head,
                                          std::span<const double> predictions,
                                          std::span<const double> targets) {
  if (head.is_classification()) {
    return {{"auroc", Auroc(predictions, targets)},
            {"auprc", Auprc(predictions, targets)}};
  }
  return {{"mse", MeanSquaredError(predictions, targets)}};
}

MetricSummary Summarize(std::vector<double> per_fold) {
  MetricSummary s;
  s.per_fold = std::move(per_fold);
  if (s.per_fold.empty()) return s;
  const double n = static_cast<double>(s.per_fold.size());
  double sum = 0.0;
  for (double v : s.per_fold) sum += v;
  s.mean = sum / n;
  if (s.per_fold.size() > 1) {
    double sq = 0.0;
    for (double v : s.per_fold) sq += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(sq / (n - 1.0));
  }
  return s;
}

nlohmann::json MetricsToJson(const std::map<std::string, MetricSummary>& metrics) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [name, s] : metrics) {
    out[name] = {{"mean", s.mean}, {"std", s.std}, {"per_fold", s.per_fold}};
  }
  return out;
}

}  // namespace sian
