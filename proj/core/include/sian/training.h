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

#ifndef SIAN_TRAINING_H_
#define SIAN_TRAINING_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sian/loss.h"
#include "sian/mlp.h"
#include "sian/optim.h"
#include "sian/sian_model.h"
#include "sian/tensor.h"

namespace sian {

// Which layout runs the SIAN training loop.
enum class TrainingBackend {
  // All subnets as one fused block-diagonal network per level.
  kBlockSparse,
  // One network per interaction set, processed sequentially.
  kPerShape,
};

struct TrainConfig {
  AdagradConfig optimizer;
  // Coefficient of the L1 penalty on weights (biases are not penalized).
  double l1 = 5e-5;
  size_t batch_size = 256;
  size_t max_epochs = 100;
  // Stop after this many epochs without validation improvement; 0 disables.
  size_t patience = 0;
  uint64_t seed = 0;
  // Start the SIAN bias at the target mean (regression) or the base-rate
  // logit (classification).
  bool initialize_bias = true;
  TrainingBackend backend = TrainingBackend::kBlockSparse;
};

struct EpochRecord {
  size_t epoch = 0;
  // Mean per-sample data loss over the epoch's mini-batches (no L1 term).
  double train_loss = 0.0;
  // Data loss on the validation set after the epoch; equals train_loss when
  // no validation data is given.
  double val_loss = 0.0;
};

struct SianTrainResult {
  // Parameters of the epoch with the lowest validation loss, in the mode of
  // the input model.
  SianModel model;
  std::vector<EpochRecord> trace;
  size_t best_epoch = 0;
};

struct MlpTrainResult {
  Mlp model;
  std::vector<EpochRecord> trace;
  size_t best_epoch = 0;
};

// Trains a SIAN model with mini-batch Adagrad. Throws NumericError if the loss
// becomes non-finite and ShapeError on inconsistent inputs. x_val may have
// zero rows.
SianTrainResult TrainSian(const SianModel& model, const Matrix& x_train,
                          std::span<const double> y_train, const Matrix& x_val,
                          std::span<const double> y_val,
                          const TrainConfig& config);

// Same loop for a single dense network (the reference model that interaction
// detection probes). The head decides the loss; initialize_bias sets the
// output-layer bias.
MlpTrainResult TrainMlp(const Mlp& model, const TaskHead& head,
                        const Matrix& x_train, std::span<const double> y_train,
                        const Matrix& x_val, std::span<const double> y_val,
                        const TrainConfig& config);

// Target mean for regression, log-odds of the positive rate for
// classification.
double InitialBias(const TaskHead& head, std::span<const double> targets);

}  // namespace sian

#endif  // SIAN_TRAINING_H_
