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

#ifndef SIAN_OPTIM_H_
#define SIAN_OPTIM_H_

#include <span>
#include <vector>

namespace sian {

struct AdagradConfig {
  double learning_rate = 5e-3;
  double epsilon = 1e-10;
};

// One Adagrad update on a flat parameter block:
//   G += g^2;  w -= lr * g / (sqrt(G) + eps)
void AdagradStep(std::span<double> params, std::span<const double> grads,
                 std::span<double> accumulators, const AdagradConfig& config);

// Accumulators for a list of parameter blocks.
class AdagradState {
 public:
  AdagradState() = default;
  AdagradState(const std::vector<size_t>& block_sizes, AdagradConfig config);

  template <typename Spans>
  static AdagradState ForParameters(const Spans& params, AdagradConfig config) {
    std::vector<size_t> sizes;
    for (const auto& p : params) sizes.push_back(p.size());
    return AdagradState(sizes, config);
  }

  // Throws ShapeError if the block list does not match the accumulators.
  void Step(const std::vector<std::span<double>>& params,
            const std::vector<std::span<double>>& grads);

  const AdagradConfig& config() const { return config_; }
  const std::vector<std::vector<double>>& accumulators() const {
    return accumulators_;
  }

 private:
  AdagradConfig config_;
  std::vector<std::vector<double>> accumulators_;
};

}  // namespace sian

#endif  // SIAN_OPTIM_H_
