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

#include "sian/optim.h"

#include <cmath>
#include <string>

#include "sian/errors.h"

namespace sian {

void AdagradStep(std::span<double> params, std::span<const double> grads,
                 std::span<double> accumulators, const AdagradConfig& config) {
  if (params.size() != grads.size() || params.size() != accumulators.size()) {
    throw ShapeError("adagrad block sizes differ: params " +
                     std::to_string(params.size()) + ", grads " +
                     std::to_string(grads.size()) + ", state " +
                     std::to_string(accumulators.size()));
  }
  for (size_t i = 0; i < params.size(); ++i) {
    const double g = grads[i];
    accumulators[i] += g * g;
    if (g != 0.0) {
      params[i] -= config.learning_rate * g /
                   (std::sqrt(accumulators[i]) + config.epsilon);
    }
  }
}

AdagradState::AdagradState(const std::vector<size_t>& block_sizes,
                           AdagradConfig config)
    : config_(config) {
  for (size_t n : block_sizes) accumulators_.emplace_back(n, 0.0);
}

void AdagradState::Step(const std::vector<std::span<double>>& params,
                        const std::vector<std::span<double>>& grads) {
  if (params.size() != accumulators_.size() || grads.size() != params.size()) {
    throw ShapeError("adagrad expects " + std::to_string(accumulators_.size()) +
                     " parameter blocks");
  }
  for (size_t b = 0; b < params.size(); ++b) {
    AdagradStep(params[b], grads[b], accumulators_[b], config_);
  }
}

}  // namespace sian
