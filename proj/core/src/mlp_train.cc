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

#include <algorithm>
#include <cmath>
#include <limits>

#include "sian/errors.h"
#include "sian/rng.h"
#include "sian/training.h"

namespace sian {
namespace {

Matrix Rows(const Matrix& x, std::span<const size_t> rows) {
  Matrix out(rows.size(), x.cols());
  for (size_t r = 0; r < rows.size(); ++r) {
    std::copy(x.row(rows[r]).begin(), x.row(rows[r]).end(), out.row(r).begin());
  }
  return out;
}

}  // namespace

MlpTrainResult TrainMlp(const Mlp& model, const TaskHead& head,
                        const Matrix& x_train, std::span<const double> y_train,
                        const Matrix& x_val, std::span<const double> y_val,
                        const TrainConfig& config) {
  if (x_train.rows() != y_train.size() || x_val.rows() != y_val.size()) {
    throw ShapeError("feature rows and targets differ in length");
  }
  if (x_train.rows() == 0) throw DomainError("no training rows");
  if (config.batch_size == 0) throw ConfigError("batch size must be positive");

  Mlp net = model;
  if (config.initialize_bias) {
    const size_t last = net.num_layers() - 1;
    net.SetLayer(last, net.weight(last), {InitialBias(head, y_train)});
  }
  AdagradState state =
      AdagradState::ForParameters(net.MutableParameters(), config.optimizer);
  Rng rng(config.seed);
  const size_t n = x_train.rows();
  const bool has_val = x_val.rows() > 0;

  MlpTrainResult result{net, {}, 0};
  double best = std::numeric_limits<double>::infinity();
  size_t since_best = 0;
  MlpCache cache;
  std::vector<double> batch_y;
  for (size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
    const std::vector<size_t> order = rng.Permutation(n);
    double loss_sum = 0.0;
    for (size_t start = 0; start < n; start += config.batch_size) {
      const size_t end = std::min(n, start + config.batch_size);
      std::span<const size_t> rows(order.data() + start, end - start);
      const Matrix xb = Rows(x_train, rows);
      batch_y.resize(rows.size());
      for (size_t r = 0; r < rows.size(); ++r) batch_y[r] = y_train[rows[r]];
      const std::vector<double> pred = net.Forward(xb, &cache);
      LossResult loss = ComputeLoss(head, pred, batch_y);
      if (!std::isfinite(loss.value)) {
        throw NumericError("training loss became non-finite at epoch " +
                           std::to_string(epoch) +
                           "; lower the learning rate or check the data");
      }
      loss_sum += loss.value * static_cast<double>(rows.size());
      MlpGradients g = net.Backward(cache, loss.gradient);
      for (size_t l = 0; l < g.weights.size(); ++l) {
        AddL1Subgradient(config.l1, net.weight(l).data(), g.weights[l].data());
      }
      state.Step(net.MutableParameters(), g.Spans());
    }
    EpochRecord rec{epoch, loss_sum / static_cast<double>(n), 0.0};
    rec.val_loss = has_val
                       ? ComputeLoss(head, net.Forward(x_val), y_val).value
                       : rec.train_loss;
    result.trace.push_back(rec);
    if (rec.val_loss < best) {
      best = rec.val_loss;
      result.best_epoch = epoch;
      result.model = net;
      since_best = 0;
    } else if (config.patience > 0 && ++since_best >= config.patience) {
      break;
    }
  }
  return result;
}

}  // namespace sian
