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

#include "sian/mlp.h"

#include <cmath>
#include <string>

#include "sian/errors.h"
#include "sian/rng.h"

namespace sian {

std::vector<std::span<double>> MlpGradients::Spans() {
  std::vector<std::span<double>> spans;
  for (size_t l = 0; l < weights.size(); ++l) {
    spans.push_back(weights[l].data());
    spans.push_back(biases[l]);
  }
  return spans;
}

Mlp::Mlp(std::vector<size_t> widths) : widths_(std::move(widths)) {
  if (widths_.size() < 2) {
    throw ValidationError("an mlp needs at least input and output widths");
  }
  if (widths_.back() != 1) throw ValidationError("mlp output width must be 1");
  for (size_t w : widths_) {
    if (w == 0) throw ValidationError("mlp layer widths must be positive");
  }
  for (size_t l = 0; l + 1 < widths_.size(); ++l) {
    weights_.emplace_back(widths_[l], widths_[l + 1]);
    biases_.emplace_back(widths_[l + 1], 0.0);
  }
}

Mlp Mlp::Initialized(std::vector<size_t> widths, Rng& rng) {
  Mlp net(std::move(widths));
  for (size_t l = 0; l < net.num_layers(); ++l) {
    const double fan = static_cast<double>(net.widths_[l] + net.widths_[l + 1]);
    const double limit = std::sqrt(6.0 / fan);
    for (double& w : net.weights_[l].data()) w = rng.Uniform(-limit, limit);
  }
  return net;
}

size_t Mlp::parameter_count() const {
  size_t n = 0;
  for (size_t l = 0; l < weights_.size(); ++l) {
    n += weights_[l].size() + biases_[l].size();
  }
  return n;
}

void Mlp::SetLayer(size_t layer, Matrix weight, std::vector<double> bias) {
  if (layer >= weights_.size()) throw LookupError("no such mlp layer");
  if (weight.rows() != weights_[layer].rows() ||
      weight.cols() != weights_[layer].cols() ||
      bias.size() != biases_[layer].size()) {
    throw ShapeError("layer " + std::to_string(layer) + " shape mismatch");
  }
  weights_[layer] = std::move(weight);
  biases_[layer] = std::move(bias);
  ++generation_;
}

std::vector<std::span<double>> Mlp::MutableParameters() {
  ++generation_;
  std::vector<std::span<double>> spans;
  for (size_t l = 0; l < weights_.size(); ++l) {
    spans.push_back(weights_[l].data());
    spans.push_back(biases_[l]);
  }
  return spans;
}

std::vector<double> Mlp::Forward(const Matrix& batch) const {
  return Forward(batch, nullptr);
}

std::vector<double> Mlp::Forward(const Matrix& batch, MlpCache* cache) const {
  if (weights_.empty()) throw StateError("forward on an unconfigured mlp");
  if (batch.cols() != input_width()) {
    throw ShapeError("mlp expects " + std::to_string(input_width()) +
                     " inputs, batch has " + std::to_string(batch.cols()));
  }
  if (cache != nullptr) {
    cache->net = this;
    cache->generation = generation_;
    cache->inputs.clear();
    cache->hidden_pre.clear();
    cache->inputs.push_back(batch);
  }
  Matrix a = batch;
  for (size_t l = 0; l < weights_.size(); ++l) {
    Matrix z = MatMul(a, weights_[l]);
    const std::vector<double>& b = biases_[l];
    for (size_t r = 0; r < z.rows(); ++r) {
      auto zr = z.row(r);
      for (size_t j = 0; j < zr.size(); ++j) zr[j] += b[j];
    }
    if (l + 1 == weights_.size()) {
      return std::vector<double>(z.data().begin(), z.data().end());
    }
    if (cache != nullptr) cache->hidden_pre.push_back(z);
    for (double& v : z.data()) v = v > 0.0 ? v : 0.0;
    if (cache != nullptr) cache->inputs.push_back(z);
    a = std::move(z);
  }
  return {};
}

MlpGradients Mlp::ZeroGradients() const {
  MlpGradients g;
  for (size_t l = 0; l < weights_.size(); ++l) {
    g.weights.emplace_back(weights_[l].rows(), weights_[l].cols());
    g.biases.emplace_back(biases_[l].size(), 0.0);
  }
  return g;
}

MlpGradients Mlp::Backward(const MlpCache& cache,
                           std::span<const double> upstream) const {
  if (cache.net != this || cache.generation != generation_ ||
      cache.inputs.size() != weights_.size()) {
    throw StateError("mlp backward needs a forward cache from the current "
                     "parameters");
  }
  const size_t n = cache.inputs.front().rows();
  if (upstream.size() != n) {
    throw ShapeError("upstream gradient has " +
                     std::to_string(upstream.size()) + " entries for batch of " +
                     std::to_string(n));
  }
  MlpGradients g = ZeroGradients();
  Matrix delta(n, 1, std::vector<double>(upstream.begin(), upstream.end()));
  for (size_t l = weights_.size(); l-- > 0;) {
    const Matrix& a = cache.inputs[l];
    const Matrix& w = weights_[l];
    Matrix& gw = g.weights[l];
    std::vector<double>& gb = g.biases[l];
    const size_t out = w.cols();
    for (size_t r = 0; r < n; ++r) {
      const double* ar = a.row(r).data();
      const double* dr = delta.row(r).data();
      for (size_t k = 0; k < w.rows(); ++k) {
        const double ak = ar[k];
        double* gwr = gw.row(k).data();
        for (size_t j = 0; j < out; ++j) gwr[j] += ak * dr[j];
      }
      for (size_t j = 0; j < out; ++j) gb[j] += dr[j];
    }
    if (l == 0) break;
    const Matrix& pre = cache.hidden_pre[l - 1];
    Matrix prev(n, w.rows());
    for (size_t r = 0; r < n; ++r) {
      const double* dr = delta.row(r).data();
      const double* pr = pre.row(r).data();
      double* out_row = prev.row(r).data();
      for (size_t k = 0; k < w.rows(); ++k) {
        if (pr[k] <= 0.0) continue;
        const double* wr = w.row(k).data();
        double s = 0.0;
        for (size_t j = 0; j < out; ++j) s += dr[j] * wr[j];
        out_row[k] = s;
      }
    }
    delta = std::move(prev);
  }
  return g;
}

}  // namespace sian
