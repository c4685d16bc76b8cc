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

#ifndef SIAN_LOSS_H_
#define SIAN_LOSS_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sian {

enum class Task { kRegression, kBinaryClassification };

enum class Link { kIdentity, kLogit };

// Pairs a task with its link: regression uses the identity link and squared
// error; binary classification uses the logit link (models emit logits) and
// binary cross-entropy.
class TaskHead {
 public:
  constexpr TaskHead() = default;
  constexpr explicit TaskHead(Task task) : task_(task) {}

  static TaskHead Regression() { return TaskHead(Task::kRegression); }
  static TaskHead Classification() {
    return TaskHead(Task::kBinaryClassification);
  }
  // Accepts "regression" and "binary_classification" (alias "classification").
  static TaskHead FromName(std::string_view name);

  Task task() const { return task_; }
  Link link() const {
    return task_ == Task::kRegression ? Link::kIdentity : Link::kLogit;
  }
  bool is_classification() const {
    return task_ == Task::kBinaryClassification;
  }
  std::string name() const;

  bool operator==(const TaskHead&) const = default;

 private:
  Task task_ = Task::kRegression;
};

struct LossResult {
  double value = 0.0;
  // d(value)/d(prediction_i), already divided by the batch size.
  std::vector<double> gradient;
};

// Mean squared error or mean binary cross-entropy on logits. Throws
// DomainError on an empty batch and ShapeError on a length mismatch.
LossResult ComputeLoss(const TaskHead& head, std::span<const double> predictions,
                       std::span<const double> targets);

// log(1 + exp(z)) without overflow.
double Softplus(double z);
double Sigmoid(double z);

// lambda * sum |w|.
double L1Penalty(double lambda, std::span<const double> weights);
// grad += lambda * sign(w), with sign(0) = 0.
void AddL1Subgradient(double lambda, std::span<const double> weights,
                      std::span<double> grad);

}  // namespace sian

#endif  // SIAN_LOSS_H_
