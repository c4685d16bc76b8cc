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

#include "sian/loss.h"

#include <cmath>

#include "sian/errors.h"

namespace sian {

TaskHead TaskHead::FromName(std::string_view name) {
  if (name == "regression") return Regression();
  if (name == "binary_classification" || name == "classification") {
    return Classification();
  }
  throw ConfigError("unknown task '" + std::string(name) + "'");
}

std::string TaskHead::name() const {
  return is_classification() ? "binary_classification" : "regression";
}

double Softplus(double z) {
  return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z)));
}

double Sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

LossResult ComputeLoss(const TaskHead& head, std::span<const double> predictions,
                       std::span<const double> targets) {
  if (predictions.size() != targets.size()) {
    throw ShapeError("loss: " + std::to_string(predictions.size()) +
                     " predictions vs " + std::to_string(targets.size()) +
                     " targets");
  }
  if (predictions.empty()) throw DomainError("loss of an empty batch");
  const double n = static_cast<double>(predictions.size());
  LossResult result;
  result.gradient.resize(predictions.size());
  double total = 0.0;
  if (head.task() == Task::kRegression) {
    for (size_t i = 0; i < predictions.size(); ++i) {
      const double r = predictions[i] - targets[i];
      total += r * r;
      result.gradient[i] = 2.0 * r / n;
    }
  } else {
    // -[y log s(z) + (1-y) log(1-s(z))] = softplus(z) - y z.
    for (size_t i = 0; i < predictions.size(); ++i) {
      const double z = predictions[i];
      total += Softplus(z) - targets[i] * z;
      result.gradient[i] = (Sigmoid(z) - targets[i]) / n;
    }
  }
  result.value = total / n;
  return result;
}

double L1Penalty(double lambda, std::span<const double> weights) {
  double s = 0.0;
  for (double w : weights) s += std::abs(w);
  return lambda * s;
}

void AddL1Subgradient(double lambda, std::span<const double> weights,
                      std::span<double> grad) {
  if (weights.size() != grad.size()) {
    throw ShapeError("l1 subgradient size mismatch");
  }
  for (size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] > 0) {
      grad[i] += lambda;
    } else if (weights[i] < 0) {
      grad[i] -= lambda;
    }
  }
}

}  // namespace sian
