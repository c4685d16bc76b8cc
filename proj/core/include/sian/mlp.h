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

#ifndef SIAN_MLP_H_
#define SIAN_MLP_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sian/tensor.h"

namespace sian {

class Rng;
class Mlp;

// Activations recorded by Mlp::Forward for a later Backward call.
struct MlpCache {
  const Mlp* net = nullptr;
  uint64_t generation = 0;
  // inputs[l] is the input of layer l (batch for l = 0, post-ReLU otherwise).
  std::vector<Matrix> inputs;
  // Pre-activations of the hidden layers.
  std::vector<Matrix> hidden_pre;
};

struct MlpGradients {
  std::vector<Matrix> weights;
  std::vector<std::vector<double>> biases;

  // [W0, b0, W1, b1, ...], the order of Mlp::MutableParameters.
  std::vector<std::span<double>> Spans();
};

// Fully connected ReLU network with a single linear output unit.
// Layer l maps widths[l] -> widths[l+1] via z = a W_l + b_l, W_l being
// widths[l] x widths[l+1].
class Mlp {
 public:
  Mlp() = default;
  // Zero weights and biases. Throws ValidationError unless widths has at least
  // two entries, all positive, the last equal to 1.
  explicit Mlp(std::vector<size_t> widths);

  // Glorot-uniform weights U(-sqrt(6/(fan_in+fan_out)), +...) and zero biases.
  static Mlp Initialized(std::vector<size_t> widths, Rng& rng);

  const std::vector<size_t>& widths() const { return widths_; }
  size_t num_layers() const { return weights_.size(); }
  size_t input_width() const { return widths_.front(); }
  const Matrix& weight(size_t layer) const { return weights_[layer]; }
  const std::vector<double>& bias(size_t layer) const { return biases_[layer]; }
  size_t parameter_count() const;

  // Replaces the parameters of one layer; shapes must match.
  void SetLayer(size_t layer, Matrix weight, std::vector<double> bias);

  // [W0, b0, W1, b1, ...]. Invalidates outstanding caches.
  std::vector<std::span<double>> MutableParameters();

  // Returns one prediction per batch row. Throws ShapeError on width mismatch.
  std::vector<double> Forward(const Matrix& batch) const;
  std::vector<double> Forward(const Matrix& batch, MlpCache* cache) const;

  // Gradients of sum_i upstream[i] * prediction_i with respect to every
  // parameter. The cache must come from Forward on this network since its
  // last mutation; otherwise StateError. ReLU'(0) is taken as 0.
  MlpGradients Backward(const MlpCache& cache,
                        std::span<const double> upstream) const;

  // Zero-valued gradients with this network's shapes.
  MlpGradients ZeroGradients() const;

  uint64_t generation() const { return generation_; }

 private:
  std::vector<size_t> widths_;
  std::vector<Matrix> weights_;
  std::vector<std::vector<double>> biases_;
  uint64_t generation_ = 0;
};

}  // namespace sian

#endif  // SIAN_MLP_H_
