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

#ifndef SIAN_RNG_H_
#define SIAN_RNG_H_

#include <cstddef>
#include <cstdint>
#include <vector>

namespace sian {

// SplitMix64 (Steele, Lea & Flood 2014; reference code by S. Vigna). Every
// derived draw below is built from integer arithmetic or from the IEEE
// operations sqrt/log/cos, so streams are reproducible across platforms up to
// libm rounding in Normal().
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t NextU64();

  // Uniform in [0, 1) with 53 random bits.
  double Uniform();
  double Uniform(double lo, double hi);

  // Uniform integer in [0, n). Unbiased (rejection sampling). n must be > 0.
  uint64_t UniformInt(uint64_t n);

  // Standard normal via the Box-Muller transform; caches the second variate.
  double Normal();

  // Fisher-Yates shuffle of [0, n).
  std::vector<size_t> Permutation(size_t n);

  // k distinct indices from [0, n) in ascending order.
  std::vector<size_t> SampleWithoutReplacement(size_t n, size_t k);

  uint64_t state() const { return state_; }

 private:
  uint64_t state_;
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

}  // namespace sian

#endif  // SIAN_RNG_H_
