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

#include "sian/training.h"

#include <cmath>

#include <gtest/gtest.h>

#include "sian/errors.h"
#include "sian/rng.h"

namespace sian {
namespace {

struct Data {
  Matrix x;
  std::vector<double> y;
};

Data Normal(size_t n, size_t d, uint64_t seed, double (*f)(std::span<const double>)) {
  Rng rng(seed);
  Data data{Matrix(n, d), std::vector<double>(n)};
  for (size_t r = 0; r < n; ++r) {
    for (size_t c = 0; c < d; ++c) data.x(r, c) = rng.Normal();
    data.y[r] = f(data.x.row(r));
  }
  return data;
}

double Mse(const std::vector<double>& pred, const std::vector<double>& y) {
  double s = 0.0;
  for (size_t i = 0; i < y.size(); ++i) s += (pred[i] - y[i]) * (pred[i] - y[i]);
  return s / static_cast<double>(y.size());
}

SianModel Build(size_t d, std::vector<InteractionSet> family, uint64_t seed,
                TaskHead head = TaskHead::Regression()) {
  GamArchitecture arch;
  arch.num_features = d;
  arch.family = std::move(family);
  arch.head = head;
  Rng rng(seed);
  return SianModel::Build(arch, rng);
}

TrainConfig Config(size_t epochs) {
  TrainConfig config;
  config.optimizer.learning_rate = 0.05;
  config.l1 = 0.0;
  config.batch_size = 64;
  config.max_epochs = epochs;
  return config;
}

TEST(TrainSianTest, LearnsLinearShape) {
  const Data train = Normal(512, 2, 1, [](std::span<const double> x) {
    return 3.0 * x[0];
  });
  const Data val = Normal(256, 2, 2, [](std::span<const double> x) {
    return 3.0 * x[0];
  });
  const SianModel model = Build(2, {{0}}, 3);
  const SianTrainResult r = TrainSian(model, train.x, train.y, val.x, val.y,
                                      Config(500));
  EXPECT_LT(Mse(r.model.Forward(val.x), val.y), 1e-3);
  EXPECT_EQ(r.trace.size(), 500u);
}

double Product(std::span<const double> x) { return x[0] * x[1]; }

TEST(TrainSianTest, AdditiveFamilyCannotFitProduct) {
  const Data train = Normal(1024, 2, 4, Product);
  const Data val = Normal(1024, 2, 5, Product);
  const SianTrainResult r = TrainSian(Build(2, {{0}, {1}}, 6), train.x, train.y,
                                      val.x, val.y, Config(100));
  // The best additive approximation of x0*x1 is a constant.
  EXPECT_GT(Mse(r.model.Forward(val.x), val.y), 0.8);
}

TEST(TrainSianTest, PairSubnetFitsProduct) {
  const Data train = Normal(1024, 2, 4, Product);
  const Data val = Normal(1024, 2, 5, Product);
  const SianTrainResult r = TrainSian(Build(2, {{0, 1}}, 6), train.x, train.y,
                                      val.x, val.y, Config(300));
  EXPECT_LT(Mse(r.model.Forward(val.x), val.y), 0.05);
}

TEST(TrainSianTest, BackendsProduceTheSameModel) {
  const Data train = Normal(300, 3, 7, Product);
  const SianModel model = Build(3, {{0}, {2}, {0, 1}}, 8);
  TrainConfig config = Config(5);
  config.l1 = 1e-3;
  const SianTrainResult a =
      TrainSian(model, train.x, train.y, Matrix(0, 3), {}, config);
  config.backend = TrainingBackend::kPerShape;
  const SianTrainResult b =
      TrainSian(model, train.x, train.y, Matrix(0, 3), {}, config);
  EXPECT_EQ(a.model.Forward(train.x), b.model.Forward(train.x));
  ASSERT_EQ(a.trace.size(), b.trace.size());
  for (size_t e = 0; e < a.trace.size(); ++e) {
    EXPECT_EQ(a.trace[e].train_loss, b.trace[e].train_loss);
  }
}

TEST(TrainSianTest, ResultKeepsInputMode) {
  const Data train = Normal(100, 2, 9, Product);
  const SianModel model =
      Build(2, {{0, 1}}, 10).Converted(ExecutionMode::kCompressed);
  const SianTrainResult r =
      TrainSian(model, train.x, train.y, Matrix(0, 2), {}, Config(2));
  EXPECT_EQ(r.model.mode(), ExecutionMode::kCompressed);
}

TEST(TrainSianTest, SameSeedIsDeterministic) {
  const Data train = Normal(200, 2, 11, Product);
  const SianModel model = Build(2, {{0}, {0, 1}}, 12);
  const SianTrainResult a =
      TrainSian(model, train.x, train.y, Matrix(0, 2), {}, Config(3));
  const SianTrainResult b =
      TrainSian(model, train.x, train.y, Matrix(0, 2), {}, Config(3));
  EXPECT_EQ(a.model.Forward(train.x), b.model.Forward(train.x));
}

TEST(TrainSianTest, PatienceStopsEarly) {
  const Data train = Normal(200, 2, 13, Product);
  const Data val = Normal(200, 2, 14, [](std::span<const double>) { return 0.0; });
  TrainConfig config = Config(200);
  config.patience = 3;
  const SianTrainResult r =
      TrainSian(Build(2, {{0, 1}}, 15), train.x, train.y, val.x, val.y, config);
  EXPECT_LT(r.trace.size(), 200u);
  EXPECT_LE(r.best_epoch, r.trace.size());
}

TEST(TrainSianTest, DivergenceIsNumericError) {
  const Data train = Normal(64, 1, 16, [](std::span<const double> x) {
    return 1e200 * x[0];
  });
  TrainConfig config = Config(3);
  config.optimizer.learning_rate = 1e200;
  EXPECT_THROW(TrainSian(Build(1, {{0}}, 17), train.x, train.y, Matrix(0, 1), {},
                         config),
               NumericError);
}

TEST(TrainSianTest, RejectsMismatchedData) {
  const SianModel model = Build(2, {{0}}, 18);
  EXPECT_THROW(TrainSian(model, Matrix(4, 3), std::vector<double>(4), Matrix(0, 2),
                         {}, Config(1)),
               ShapeError);
}

TEST(InitialBiasTest, MeanAndLogOdds) {
  EXPECT_EQ(InitialBias(TaskHead::Regression(), std::vector<double>{1, 2, 6}), 3.0);
  EXPECT_NEAR(InitialBias(TaskHead::Classification(),
                          std::vector<double>{1, 0, 0, 0}),
              std::log(1.0 / 3.0), 1e-15);
}

TEST(TrainMlpTest, FitsProduct) {
  const Data train = Normal(1024, 2, 19, Product);
  const Data val = Normal(512, 2, 20, Product);
  Rng rng(21);
  const Mlp net = Mlp::Initialized({2, 32, 16, 1}, rng);
  const MlpTrainResult r = TrainMlp(net, TaskHead::Regression(), train.x, train.y,
                                    val.x, val.y, Config(200));
  EXPECT_LT(Mse(r.model.Forward(val.x), val.y), 0.05);
}

TEST(TrainMlpTest, ClassificationLossDecreases) {
  const Data train = Normal(512, 2, 22, [](std::span<const double> x) {
    return x[0] + x[1] > 0 ? 1.0 : 0.0;
  });
  Rng rng(23);
  const Mlp net = Mlp::Initialized({2, 8, 1}, rng);
  const MlpTrainResult r = TrainMlp(net, TaskHead::Classification(), train.x,
                                    train.y, Matrix(0, 2), {}, Config(30));
  EXPECT_LT(r.trace.back().train_loss, 0.5 * r.trace.front().train_loss);
}

}  // namespace
}  // namespace sian
