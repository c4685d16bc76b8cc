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

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "sian/errors.h"
#include "sian/loss.h"
#include "sian/optim.h"
#include "sian/rng.h"

namespace sian {
namespace {

TEST(LossTest, SquaredErrorValueAndGradient) {
  const std::vector<double> pred{1.0, 3.0};
  const std::vector<double> y{0.0, 1.0};
  const LossResult r = ComputeLoss(TaskHead::Regression(), pred, y);
  EXPECT_EQ(r.value, 2.5);
  EXPECT_EQ(r.gradient, (std::vector<double>{1.0, 2.0}));
}

TEST(LossTest, CrossEntropyAtZeroLogitIsLog2) {
  const LossResult r = ComputeLoss(TaskHead::Classification(),
                                   std::vector<double>{0.0}, std::vector<double>{1.0});
  EXPECT_NEAR(r.value, std::numbers::ln2, 1e-15);
  EXPECT_EQ(r.gradient[0], -0.5);
}

TEST(LossTest, CrossEntropyMatchesDirectFormula) {
  Rng rng(1);
  for (int i = 0; i < 200; ++i) {
    const double z = rng.Uniform(-8, 8);
    const double y = rng.UniformInt(2);
    const double p = 1.0 / (1.0 + std::exp(-z));
    const double direct = -(y * std::log(p) + (1 - y) * std::log(1 - p));
    const LossResult r = ComputeLoss(TaskHead::Classification(),
                                     std::vector<double>{z}, std::vector<double>{y});
    EXPECT_NEAR(r.value, direct, 1e-12);
    EXPECT_NEAR(r.gradient[0], p - y, 1e-15);
  }
}

TEST(LossTest, CrossEntropyIsSymmetric) {
  for (double z : {-3.0, -0.5, 0.25, 7.0}) {
    const double a = ComputeLoss(TaskHead::Classification(),
                                 std::vector<double>{z}, std::vector<double>{1.0})
                         .value;
    const double b = ComputeLoss(TaskHead::Classification(),
                                 std::vector<double>{-z}, std::vector<double>{0.0})
                         .value;
    EXPECT_NEAR(a, b, 1e-15);
  }
}

TEST(LossTest, ExtremeLogitsStayFinite) {
  const LossResult r =
      ComputeLoss(TaskHead::Classification(), std::vector<double>{-800.0, 800.0},
                  std::vector<double>{1.0, 0.0});
  EXPECT_TRUE(std::isfinite(r.value));
  EXPECT_NEAR(r.value, 800.0, 1e-9);
}

TEST(LossTest, RejectsBadBatches) {
  EXPECT_THROW(ComputeLoss(TaskHead::Regression(), std::vector<double>{},
                           std::vector<double>{}),
               DomainError);
  EXPECT_THROW(ComputeLoss(TaskHead::Regression(), std::vector<double>{1.0},
                           std::vector<double>{1.0, 2.0}),
               ShapeError);
}

TEST(LossTest, TaskNames) {
  EXPECT_EQ(TaskHead::FromName("regression"), TaskHead::Regression());
  EXPECT_EQ(TaskHead::FromName("binary_classification"),
            TaskHead::Classification());
  EXPECT_EQ(TaskHead::Classification().link(), Link::kLogit);
}

TEST(L1Test, PenaltyAndSubgradient) {
  const std::vector<double> w{-2.0, 0.0, 3.0};
  EXPECT_EQ(L1Penalty(0.5, w), 2.5);
  std::vector<double> g{1.0, 1.0, 1.0};
  AddL1Subgradient(0.5, w, g);
  EXPECT_EQ(g, (std::vector<double>{0.5, 1.0, 1.5}));
}

TEST(AdagradTest, FirstStepMovesByLearningRate) {
  std::vector<double> w{1.0};
  std::vector<double> acc{0.0};
  AdagradStep(w, std::vector<double>{2.0}, acc, {0.1, 0.0});
  EXPECT_EQ(acc[0], 4.0);
  EXPECT_DOUBLE_EQ(w[0], 0.9);
}

TEST(AdagradTest, SecondStepUsesAccumulatedSquares) {
  std::vector<double> w{0.0};
  std::vector<double> acc{0.0};
  const AdagradConfig config{0.1, 0.0};
  AdagradStep(w, std::vector<double>{3.0}, acc, config);
  AdagradStep(w, std::vector<double>{3.0}, acc, config);
  EXPECT_EQ(acc[0], 18.0);
  EXPECT_NEAR(w[0], -0.1 - 0.3 / std::sqrt(18.0), 1e-15);
}

TEST(AdagradTest, ZeroGradientLeavesParameter) {
  std::vector<double> w{1.5};
  std::vector<double> acc{0.0};
  AdagradStep(w, std::vector<double>{0.0}, acc, {});
  EXPECT_EQ(w[0], 1.5);
}

TEST(AdagradTest, StateRejectsMismatchedBlocks) {
  AdagradState state({2}, {});
  std::vector<double> w(3);
  std::vector<double> g(3);
  EXPECT_THROW(state.Step({std::span<double>(w)}, {std::span<double>(g)}),
               ShapeError);
}

}  // namespace
}  // namespace sian
