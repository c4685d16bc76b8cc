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
#include <string>

#include "sian/errors.h"
#include "sian/rng.h"
#include "sian/training.h"

namespace sian {
namespace {

void CheckData(const Matrix& x, std::span<const double> y, size_t d,
               const char* what) {
  if (x.rows() != y.size()) {
    throw ShapeError(std::string(what) + ": " + std::to_string(x.rows()) +
                     " rows but " + std::to_string(y.size()) + " targets");
  }
  if (x.rows() > 0 && x.cols() != d) {
    throw ShapeError(std::string(what) + " has " + std::to_string(x.cols()) +
                     " features, model expects " + std::to_string(d));
  }
}

void CheckFinite(double loss, size_t epoch, size_t batch) {
  if (!std::isfinite(loss)) {
    throw NumericError("training loss became non-finite at epoch " +
                       std::to_string(epoch) + ", batch " +
                       std::to_string(batch) +
                       "; lower the learning rate or check the data for "
                       "extreme values");
  }
}

// Row-major n x d to feature-major d x n.
std::vector<double> Transpose(const Matrix& x) {
  std::vector<double> t(x.size());
  for (size_t r = 0; r < x.rows(); ++r) {
    for (size_t c = 0; c < x.cols(); ++c) t[c * x.rows() + r] = x(r, c);
  }
  return t;
}

constexpr size_t kTile = 8;

// out[j][r] = sum_k w[k * ws_k + j * ws_j] * in[k][r] for j < q, r < n, where
// in and out are feature-major with row stride n. Every entry is accumulated
// from +0.0 in ascending k, so the result matches a plain triple loop.
void FeatureMajorProduct(const double* w, size_t ws_k, size_t ws_j,
                         const double* in, size_t p, double* out, size_t q,
                         size_t n) {
  for (size_t j = 0; j < q; ++j) {
    double* o = out + j * n;
    size_t r = 0;
    for (; r + kTile <= n; r += kTile) {
      double acc[kTile] = {};
      for (size_t k = 0; k < p; ++k) {
        const double wkj = w[k * ws_k + j * ws_j];
        const double* a = in + k * n + r;
        for (size_t i = 0; i < kTile; ++i) acc[i] += wkj * a[i];
      }
      for (size_t i = 0; i < kTile; ++i) o[r + i] = acc[i];
    }
    for (; r < n; ++r) {
      double acc = 0.0;
      for (size_t k = 0; k < p; ++k) acc += w[k * ws_k + j * ws_j] * in[k * n + r];
      o[r] = acc;
    }
  }
}

// g[k * q + j] += sum_r a[k][r] * d[j][r], adding in ascending r onto the
// running value so chunked batches give the same bits as one pass. Four
// inputs share one pass so the accumulation chains run side by side.
void AccumulateWeightGradient(const double* a, size_t p, const double* d,
                              size_t q, size_t n, double* g) {
  for (size_t j = 0; j < q; ++j) {
    const double* dj = d + j * n;
    size_t k = 0;
    for (; k + 4 <= p; k += 4) {
      const double* a0 = a + k * n;
      const double* a1 = a0 + n;
      const double* a2 = a1 + n;
      const double* a3 = a2 + n;
      double s0 = g[k * q + j];
      double s1 = g[(k + 1) * q + j];
      double s2 = g[(k + 2) * q + j];
      double s3 = g[(k + 3) * q + j];
      for (size_t r = 0; r < n; ++r) {
        const double dv = dj[r];
        s0 += a0[r] * dv;
        s1 += a1[r] * dv;
        s2 += a2[r] * dv;
        s3 += a3[r] * dv;
      }
      g[k * q + j] = s0;
      g[(k + 1) * q + j] = s1;
      g[(k + 2) * q + j] = s2;
      g[(k + 3) * q + j] = s3;
    }
    for (; k < p; ++k) {
      const double* ak = a + k * n;
      double s = g[k * q + j];
      for (size_t r = 0; r < n; ++r) s += ak[r] * dj[r];
      g[k * q + j] = s;
    }
  }
}

// All subnets of a SIAN model fused into one network per depth level.
// Parameters of every level live in one contiguous block-diagonal buffer.
// Batches are processed in row chunks, block by block, so the activations of
// one block stay in cache; backward recomputes them per chunk instead of
// storing the whole batch. Activations are feature-major (one row of chunk
// values per unit) so the innermost loops run over the batch. Every gradient
// entry is accumulated in ascending batch row, as in Mlp::Backward.
class FusedBlockNet {
 public:
  static constexpr size_t kChunk = 64;

  FusedBlockNet(const GamArchitecture& arch,
                const SianModel::BlockLevels& levels, double bias)
      : num_blocks_(arch.family.size()), depth_(arch.depth()), bias_(bias) {
    for (size_t t = 0; t < num_blocks_; ++t) {
      block_features_.push_back(arch.family[t].indices());
    }
    in_width_.resize(depth_);
    weight_offset_.resize(depth_);
    out_width_.resize(depth_);
    weights_.resize(depth_);
    biases_.resize(depth_);
    for (size_t l = 0; l < depth_; ++l) {
      out_width_[l] = l + 1 < depth_ ? arch.hidden_widths[l] : 1;
      size_t offset = 0;
      for (size_t t = 0; t < num_blocks_; ++t) {
        const Matrix& b = levels.weights[l].block(t);
        in_width_[l].push_back(b.rows());
        weight_offset_[l].push_back(offset);
        offset += b.size();
        weights_[l].insert(weights_[l].end(), b.data().begin(), b.data().end());
      }
      biases_[l] = levels.biases[l];
    }
    weight_grads_ = weights_;
    bias_grads_ = biases_;
    acts_.resize(depth_ + 1);
  }

  std::vector<std::span<double>> Parameters() {
    std::vector<std::span<double>> p;
    for (size_t l = 0; l < depth_; ++l) {
      p.push_back(weights_[l]);
      p.push_back(biases_[l]);
    }
    p.push_back(std::span<double>(&bias_, 1));
    return p;
  }

  std::vector<std::span<double>> Gradients() {
    std::vector<std::span<double>> g;
    for (size_t l = 0; l < depth_; ++l) {
      g.push_back(weight_grads_[l]);
      g.push_back(bias_grads_[l]);
    }
    g.push_back(std::span<double>(&bias_grad_, 1));
    return g;
  }

  // Fills `pred` for the rows `rows` of the feature-major data `x_fm` and
  // remembers the batch for Backward.
  void Forward(const std::vector<double>& x_fm, size_t total_rows,
               std::span<const size_t> rows, std::vector<double>& pred) {
    x_fm_ = &x_fm;
    total_rows_ = total_rows;
    rows_ = rows;
    pred.assign(rows.size(), bias_);
    for (size_t c = 0; c < rows.size(); c += kChunk) {
      const size_t m = std::min(kChunk, rows.size() - c);
      for (size_t t = 0; t < num_blocks_; ++t) {
        BlockForward(t, c, m);
        const double* o = acts_[depth_].data();
        for (size_t r = 0; r < m; ++r) pred[c + r] += o[r];
      }
    }
  }

  // Gradients of sum_r upstream[r] * pred[r] for the last Forward call.
  void Backward(std::span<const double> upstream) {
    double bias_grad = 0.0;
    for (double u : upstream) bias_grad += u;
    bias_grad_ = bias_grad;
    for (size_t l = 0; l < depth_; ++l) {
      std::fill(weight_grads_[l].begin(), weight_grads_[l].end(), 0.0);
      std::fill(bias_grads_[l].begin(), bias_grads_[l].end(), 0.0);
    }
    for (size_t c = 0; c < rows_.size(); c += kChunk) {
      const size_t m = std::min(kChunk, rows_.size() - c);
      for (size_t t = 0; t < num_blocks_; ++t) {
        BlockForward(t, c, m);
        delta_.assign(upstream.begin() + static_cast<std::ptrdiff_t>(c),
                      upstream.begin() + static_cast<std::ptrdiff_t>(c + m));
        for (size_t l = depth_; l-- > 0;) {
          const size_t p = in_width_[l][t];
          const size_t q = out_width_[l];
          const double* a = acts_[l].data();
          double* gb = bias_grads_[l].data() + t * q;
          for (size_t j = 0; j < q; ++j) {
            const double* dj = delta_.data() + j * m;
            double sum = gb[j];
            for (size_t r = 0; r < m; ++r) sum += dj[r];
            gb[j] = sum;
          }
          AccumulateWeightGradient(a, p, delta_.data(), q, m,
                                   weight_grads_[l].data() + weight_offset_[l][t]);
          if (l == 0) break;
          prev_.resize(p * m);
          // Weight w[k * q + j] maps delta row j to input row k.
          FeatureMajorProduct(weights_[l].data() + weight_offset_[l][t], 1, q,
                              delta_.data(), q, prev_.data(), p, m);
          // ReLU'(z) = 1 iff the post-activation is positive.
          for (size_t i = 0; i < p * m; ++i) {
            prev_[i] = a[i] > 0.0 ? prev_[i] : 0.0;
          }
          delta_.swap(prev_);
        }
      }
    }
  }

  void AddL1(double lambda) {
    if (lambda == 0.0) return;
    for (size_t l = 0; l < depth_; ++l) {
      AddL1Subgradient(lambda, weights_[l], weight_grads_[l]);
    }
  }

  SianModel::BlockLevels ToBlockLevels() const {
    SianModel::BlockLevels levels;
    for (size_t l = 0; l < depth_; ++l) {
      std::vector<Matrix> blocks;
      const size_t q = out_width_[l];
      for (size_t t = 0; t < num_blocks_; ++t) {
        const size_t p = in_width_[l][t];
        const auto begin = weights_[l].begin() +
                           static_cast<std::ptrdiff_t>(weight_offset_[l][t]);
        blocks.emplace_back(
            p, q,
            std::vector<double>(begin, begin + static_cast<std::ptrdiff_t>(p * q)));
      }
      levels.weights.emplace_back(std::move(blocks));
      levels.biases.push_back(biases_[l]);
    }
    return levels;
  }

  double bias() const { return bias_; }

 private:
  // Activations of block t on rows [c, c + m) of the remembered batch.
  void BlockForward(size_t t, size_t c, size_t m) {
    const std::vector<size_t>& features = block_features_[t];
    std::vector<double>& a0 = acts_[0];
    a0.resize(features.size() * m);
    for (size_t u = 0; u < features.size(); ++u) {
      const double* col = x_fm_->data() + features[u] * total_rows_;
      double* dst = a0.data() + u * m;
      for (size_t r = 0; r < m; ++r) dst[r] = col[rows_[c + r]];
    }
    for (size_t l = 0; l < depth_; ++l) {
      const size_t p = in_width_[l][t];
      const size_t q = out_width_[l];
      std::vector<double>& out = acts_[l + 1];
      out.resize(q * m);
      FeatureMajorProduct(weights_[l].data() + weight_offset_[l][t], q, 1,
                          acts_[l].data(), p, out.data(), q, m);
      const double* b = biases_[l].data() + t * q;
      const bool hidden = l + 1 < depth_;
      for (size_t j = 0; j < q; ++j) {
        double* z = out.data() + j * m;
        if (hidden) {
          for (size_t r = 0; r < m; ++r) {
            const double v = z[r] + b[j];
            z[r] = v > 0.0 ? v : 0.0;
          }
        } else {
          for (size_t r = 0; r < m; ++r) z[r] += b[j];
        }
      }
    }
  }

  size_t num_blocks_;
  size_t depth_;
  double bias_;
  double bias_grad_ = 0.0;
  std::vector<std::vector<size_t>> block_features_;
  std::vector<std::vector<size_t>> in_width_;
  std::vector<std::vector<size_t>> weight_offset_;
  std::vector<size_t> out_width_;
  std::vector<std::vector<double>> weights_;
  std::vector<std::vector<double>> biases_;
  std::vector<std::vector<double>> weight_grads_;
  std::vector<std::vector<double>> bias_grads_;
  // Scratch for one block on one chunk.
  std::vector<std::vector<double>> acts_;
  std::vector<double> delta_;
  std::vector<double> prev_;
  const std::vector<double>* x_fm_ = nullptr;
  size_t total_rows_ = 0;
  std::span<const size_t> rows_;
};

// The per-shape layout: one Mlp and one optimizer state per interaction set.
class PerShapeNet {
 public:
  PerShapeNet(const GamArchitecture& arch, std::vector<Mlp> subnets,
              double bias, const AdagradConfig& opt)
      : arch_(arch),
        subnets_(std::move(subnets)),
        caches_(subnets_.size()),
        bias_(bias) {
    for (Mlp& net : subnets_) {
      states_.push_back(AdagradState::ForParameters(net.MutableParameters(), opt));
    }
    bias_state_ = AdagradState({1}, opt);
  }

  Matrix GatherRows(const Matrix& x, std::span<const size_t> rows,
                    size_t t) const {
    const auto& cols = arch_.family[t].indices();
    Matrix g(rows.size(), cols.size());
    for (size_t r = 0; r < rows.size(); ++r) {
      for (size_t c = 0; c < cols.size(); ++c) g(r, c) = x(rows[r], cols[c]);
    }
    return g;
  }

  void Forward(const Matrix& x, std::span<const size_t> rows,
               std::vector<double>& pred, bool keep_cache) {
    pred.assign(rows.size(), bias_);
    for (size_t t = 0; t < subnets_.size(); ++t) {
      const Matrix in = GatherRows(x, rows, t);
      const std::vector<double> out =
          subnets_[t].Forward(in, keep_cache ? &caches_[t] : nullptr);
      for (size_t r = 0; r < rows.size(); ++r) pred[r] += out[r];
    }
  }

  void BackwardAndStep(std::span<const double> upstream, double l1) {
    for (size_t t = 0; t < subnets_.size(); ++t) {
      MlpGradients g = subnets_[t].Backward(caches_[t], upstream);
      if (l1 != 0.0) {
        for (size_t l = 0; l < g.weights.size(); ++l) {
          AddL1Subgradient(l1, subnets_[t].weight(l).data(),
                           g.weights[l].data());
        }
      }
      states_[t].Step(subnets_[t].MutableParameters(), g.Spans());
    }
    double bias_grad = 0.0;
    for (double u : upstream) bias_grad += u;
    bias_state_.Step({std::span<double>(&bias_, 1)},
                     {std::span<double>(&bias_grad, 1)});
  }

  const std::vector<Mlp>& subnets() const { return subnets_; }
  double bias() const { return bias_; }

 private:
  const GamArchitecture& arch_;
  std::vector<Mlp> subnets_;
  std::vector<MlpCache> caches_;
  std::vector<AdagradState> states_;
  AdagradState bias_state_;
  double bias_;
};

double EvaluateLoss(const TaskHead& head, std::span<const double> pred,
                    std::span<const double> y) {
  return ComputeLoss(head, pred, y).value;
}

std::vector<size_t> Iota(size_t n) {
  std::vector<size_t> v(n);
  for (size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

}  // namespace

double InitialBias(const TaskHead& head, std::span<const double> targets) {
  if (targets.empty()) return 0.0;
  double mean = 0.0;
  for (double y : targets) mean += y;
  mean /= static_cast<double>(targets.size());
  if (!head.is_classification()) return mean;
  const double p = std::clamp(mean, 1e-6, 1.0 - 1e-6);
  return std::log(p / (1.0 - p));
}

SianTrainResult TrainSian(const SianModel& model, const Matrix& x_train,
                          std::span<const double> y_train, const Matrix& x_val,
                          std::span<const double> y_val,
                          const TrainConfig& config) {
  const GamArchitecture& arch = model.architecture();
  CheckData(x_train, y_train, arch.num_features, "training data");
  CheckData(x_val, y_val, arch.num_features, "validation data");
  if (x_train.rows() == 0) throw DomainError("no training rows");
  if (config.batch_size == 0) throw ConfigError("batch size must be positive");
  const TaskHead& head = arch.head;
  const double start_bias =
      config.initialize_bias ? InitialBias(head, y_train) : model.bias();

  Rng rng(config.seed);
  const size_t n = x_train.rows();
  const std::vector<size_t> val_rows = Iota(x_val.rows());
  const bool has_val = x_val.rows() > 0;

  SianTrainResult result{model, {}, 0};
  double best = std::numeric_limits<double>::infinity();
  size_t since_best = 0;
  std::vector<double> pred, batch_y, val_pred;

  auto run = [&](auto& net, auto forward, auto backward_step, auto snapshot) {
    for (size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
      const std::vector<size_t> order = rng.Permutation(n);
      double loss_sum = 0.0;
      size_t batch_index = 0;
      for (size_t start = 0; start < n; start += config.batch_size) {
        const size_t end = std::min(n, start + config.batch_size);
        std::span<const size_t> rows(order.data() + start, end - start);
        forward(x_train, rows, pred, true);
        batch_y.resize(rows.size());
        for (size_t r = 0; r < rows.size(); ++r) batch_y[r] = y_train[rows[r]];
        LossResult loss = ComputeLoss(head, pred, batch_y);
        CheckFinite(loss.value, epoch, batch_index);
        loss_sum += loss.value * static_cast<double>(rows.size());
        backward_step(loss.gradient);
        ++batch_index;
      }
      EpochRecord rec{epoch, loss_sum / static_cast<double>(n), 0.0};
      if (has_val) {
        forward(x_val, val_rows, val_pred, false);
        rec.val_loss = EvaluateLoss(head, val_pred, y_val);
        CheckFinite(rec.val_loss, epoch, batch_index);
      } else {
        rec.val_loss = rec.train_loss;
      }
      result.trace.push_back(rec);
      if (rec.val_loss < best) {
        best = rec.val_loss;
        result.best_epoch = epoch;
        since_best = 0;
        snapshot(net);
      } else if (config.patience > 0 && ++since_best >= config.patience) {
        break;
      }
    }
  };

  if (config.backend == TrainingBackend::kBlockSparse) {
    const SianModel blocks = model.Converted(ExecutionMode::kBlockSparse);
    FusedBlockNet net(arch, blocks.block_levels(), start_bias);
    AdagradState state =
        AdagradState::ForParameters(net.Parameters(), config.optimizer);
    const std::vector<double> train_fm = Transpose(x_train);
    const std::vector<double> val_fm = Transpose(x_val);
    auto forward = [&](const Matrix& x, std::span<const size_t> rows,
                       std::vector<double>& out, bool) {
      const bool is_train = &x == &x_train;
      net.Forward(is_train ? train_fm : val_fm, x.rows(), rows, out);
    };
    auto backward_step = [&](const std::vector<double>& grad) {
      net.Backward(grad);
      net.AddL1(config.l1);
      state.Step(net.Parameters(), net.Gradients());
    };
    auto snapshot = [&](FusedBlockNet& fused) {
      result.model = SianModel::FromBlockLevels(arch, fused.bias(),
                                                fused.ToBlockLevels())
                         .Converted(model.mode());
    };
    run(net, forward, backward_step, snapshot);
  } else {
    const SianModel per_shape = model.Converted(ExecutionMode::kDefault);
    PerShapeNet net(arch, per_shape.subnets(), start_bias, config.optimizer);
    auto forward = [&](const Matrix& x, std::span<const size_t> rows,
                       std::vector<double>& out, bool keep) {
      net.Forward(x, rows, out, keep);
    };
    auto backward_step = [&](const std::vector<double>& grad) {
      net.BackwardAndStep(grad, config.l1);
    };
    auto snapshot = [&](PerShapeNet& shapes) {
      result.model = SianModel::FromSubnets(arch, shapes.bias(), shapes.subnets())
                         .Converted(model.mode());
    };
    run(net, forward, backward_step, snapshot);
  }
  return result;
}

}  // namespace sian
