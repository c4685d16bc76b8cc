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

#ifndef SIAN_METRICS_H_
#define SIAN_METRICS_H_

#include <map>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sian/loss.h"

namespace sian {

// Each throws ShapeError on a length mismatch and DomainError on empty input.
double MeanSquaredError(std::span<const double> predictions,
                        std::span<const double> targets);

// Probability that a random positive outranks a random negative, ties
// counting one half. Labels must be 0/1 with both classes present
// (DomainError otherwise).
double Auroc(std::span<const double> scores, std::span<const double> labels);

// Average precision: sum over distinct score thresholds, highest first, of
// precision times the gain in recall. Same label requirements as Auroc.
double Auprc(std::span<const double> scores, std::span<const double> labels);

// {"mse": ...} for regression, {"auroc": ..., "auprc": ...} for
// classification.
std::map<std::string, double> TaskMetrics(const TaskHead& head,
                                          std::span<const double> predictions,
                                          std::span<const double> targets);

struct MetricSummary {
  double mean = 0.0;
  // Sample standard deviation across folds; 0 for a single fold.
  double std = 0.0;
  std::vector<double> per_fold;
};

MetricSummary Summarize(std::vector<double> per_fold);

// {name: {"mean": m, "std": s, "per_fold": [...]}}.
nlohmann::json MetricsToJson(const std::map<std::string, MetricSummary>& metrics);

}  // namespace sian

#endif  // SIAN_METRICS_H_
