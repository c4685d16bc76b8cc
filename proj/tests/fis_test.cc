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

#include "sian/fis.h"

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "sian/errors.h"
#include "sian/fourier.h"
#include "sian/rng.h"

namespace sian {
namespace {

BatchFunction Rowwise(std::function<double(std::span<const double>)> g) {
  return [g](const Matrix& batch) {
    std::vector<double> out(batch.rows());
    for (size_t r = 0; r < batch.rows(); ++r) out[r] = g(batch.row(r));
    return out;
  };
}

// All 2^d points of {-1,1}^d as rows.
Matrix Cube(size_t d) {
  Matrix m(size_t{1} << d, d);
  for (uint64_t b = 0; b < (uint64_t{1} << d); ++b) {
    const std::vector<double> p = CubePoint(b, d);
    for (size_t i = 0; i < d; ++i) m(b, i) = p[i];
  }
  return m;
}

InteractionFamily FamilyOf(std::vector<InteractionSet> sets) {
  InteractionFamily family;
  for (auto& s : sets) family.Add({s, 1.0, 1.0});
  return family;
}

TEST(HeredityTest, Examples) {
  EXPECT_EQ(HeredityScore({0, 1}, FamilyOf({{0}, {1}})), 1.0);
  EXPECT_EQ(HeredityScore({0, 1}, FamilyOf({{0}})), 0.5);
  EXPECT_DOUBLE_EQ(HeredityScore({0, 1, 2}, FamilyOf({{0, 1}, {0, 2}})), 2.0 / 3.0);
  EXPECT_THROW(HeredityScore({0}, FamilyOf({})), DomainError);
}

TEST(FisConfigTest, ThetaPerDegreeRepeatsLastValue) {
  FisConfig config;
  config.theta = {0.1, 0.2};
  EXPECT_EQ(config.ThetaFor(1), 0.1);
  EXPECT_EQ(config.ThetaFor(2), 0.2);
  EXPECT_EQ(config.ThetaFor(5), 0.2);
  config.tau = 1.5;
  EXPECT_THROW(config.Validate(), ConfigError);
  config.tau = 0.5;
  config.max_order = 0;
  EXPECT_THROW(config.Validate(), ConfigError);
  config.max_order = 2;
  config.theta = {-1.0};
  EXPECT_THROW(config.Validate(), ConfigError);
}

TEST(SelectInteractionsTest, HugeThetaGivesEmptyFamily) {
  Rng rng(1);
  const DetectionContext ctx(
      Rowwise([](std::span<const double> x) { return x[0] * x[1] + x[2]; }),
      Matrix::Random(20, 3, rng), Baseline::Zero(3));
  FisConfig config;
  config.theta = {1e300};
  const FisResult r = SelectInteractions(ctx, config);
  EXPECT_TRUE(r.family.empty());
  EXPECT_EQ(r.candidates_per_level, std::vector<size_t>{3});
}

TEST(SelectInteractionsTest, OrderOneGivesAllSingletons) {
  Rng rng(2);
  const DetectionContext ctx(
      Rowwise([](std::span<const double> x) { return x[0] + 2 * x[1] - x[2] * x[3]; }),
      Matrix::Random(20, 4, rng), Baseline::Zero(4));
  FisConfig config;
  config.max_order = 1;
  const FisResult r = SelectInteractions(ctx, config);
  EXPECT_EQ(r.family.Sets(),
            (std::vector<InteractionSet>{{0}, {1}, {2}, {3}}));
}

TEST(SelectInteractionsTest, RecoversClosureOnTheCube) {
  const DetectionContext ctx(
      Rowwise([](std::span<const double> x) { return x[0] + x[0] * x[1]; }), Cube(2),
      Baseline::Reflect());
  FisConfig config;
  config.max_order = 2;
  config.tau = 0.5;
  config.theta = {0.01};
  const FisResult r = SelectInteractions(ctx, config);
  EXPECT_EQ(r.family.Sets(), (std::vector<InteractionSet>{{0}, {1}, {0, 1}}));
  const std::vector<double> table =
      TabulateCube(2, [](std::span<const double> x) { return x[0] + x[0] * x[1]; });
  const FourierTable t = FourierTransform(table);
  std::vector<InteractionSet> support;
  for (uint64_t m : t.Support(1e-12)) {
    if (m != 0) support.push_back(InteractionSet::FromMask(m));
  }
  EXPECT_EQ(r.family.Sets(), DownwardClosure(support));
}

TEST(SelectInteractionsTest, SoundnessIsRecorded) {
  Rng rng(3);
  auto g = [](std::span<const double> x) {
    return x[0] * x[1] + 0.5 * x[1] * x[2] * x[3] + x[4];
  };
  const DetectionContext ctx(Rowwise(g), Matrix::Random(64, 5, rng),
                             Baseline::Zero(5));
  FisConfig config;
  config.max_order = 3;
  config.theta = {1e-6, 1e-3};
  const FisResult r = SelectInteractions(ctx, config);
  InteractionFamily replay;
  for (const FamilyMember& m : r.family.members()) {
    EXPECT_GT(m.strength, config.ThetaFor(m.set.degree()));
    if (m.set.degree() >= 2) {
      EXPECT_GT(m.heredity, config.tau);
      EXPECT_EQ(m.heredity, HeredityScore(m.set, replay));
    }
    const AggregateScore* s = r.scores.Find(m.set);
    ASSERT_NE(s, nullptr);
    EXPECT_EQ(s->mean, m.strength);
    replay.Add(m);
  }
  EXPECT_TRUE(r.family.Contains({0, 1}));
  EXPECT_TRUE(r.family.Contains({1, 2}));
  EXPECT_FALSE(r.family.Contains({0, 4}));
}

TEST(SelectInteractionsTest, RaisingTauNeverAddsCandidates) {
  Rng rng(4);
  auto g = [](std::span<const double> x) {
    return x[0] * x[1] + x[1] * x[2] + x[2] * x[3] * x[4];
  };
  const DetectionContext ctx(Rowwise(g), Matrix::Random(32, 5, rng),
                             Baseline::Zero(5));
  FisConfig low;
  low.max_order = 3;
  low.tau = 0.0;
  low.theta = {1e-9};
  FisConfig high = low;
  high.tau = 0.6;
  const FisResult a = SelectInteractions(ctx, low);
  const FisResult b = SelectInteractions(ctx, high);
  ASSERT_LE(b.candidates_per_level.size(), a.candidates_per_level.size());
  for (size_t l = 0; l < b.candidates_per_level.size(); ++l) {
    EXPECT_LE(b.candidates_per_level[l], a.candidates_per_level[l]);
  }
}

TEST(SelectInteractionsTest, LevelCountStaysFarBelowBinomial) {
  Rng rng(5);
  auto g = [](std::span<const double> x) {
    double s = 0.0;
    for (size_t i = 0; i < 12; ++i) s += 0.3 * x[i];
    return s + x[0] * x[1] + x[4] * x[5] + x[8] * x[9];
  };
  const DetectionContext ctx(Rowwise(g), Matrix::Random(64, 12, rng),
                             Baseline::Zero(12));
  FisConfig config;
  config.max_order = 3;
  config.tau = 0.5;
  config.theta = {1e-6, 1e-3};
  const FisResult r = SelectInteractions(ctx, config);
  ASSERT_GE(r.candidates_per_level.size(), 2u);
  EXPECT_EQ(r.candidates_per_level[0], 12u);
  EXPECT_EQ(r.candidates_per_level[1], 66u);
  if (r.candidates_per_level.size() > 2) EXPECT_LE(r.candidates_per_level[2], 10u);
  EXPECT_EQ(r.family.size(), 15u);
}

TEST(SelectInteractionsTest, DegenerateCandidatesBecomeWarnings) {
  // Feature 1 equals the baseline in every sample.
  const Matrix val = Matrix::FromRows({{1, 0}, {2, 0}});
  const DetectionContext ctx(Rowwise([](std::span<const double> x) { return x[0]; }),
                             val, Baseline::Zero(2));
  FisConfig config;
  const FisResult r = SelectInteractions(ctx, config);
  EXPECT_EQ(r.family.Sets(), std::vector<InteractionSet>{{0}});
  EXPECT_EQ(r.warnings.size(), 1u);
}

TEST(FamilyTest, DuplicatesRejected) {
  InteractionFamily family = FamilyOf({{0}});
  EXPECT_THROW(family.Add({{0}, 1.0, 1.0}), ValidationError);
}

TEST(FamilyToArchitectureTest, Examples) {
  const GamArchitecture empty =
      FamilyToArchitecture({}, 3, {4}, TaskHead::Regression());
  EXPECT_TRUE(empty.family.empty());
  const InteractionFamily six =
      FamilyOf({{0}, {1}, {2}, {3}, {0, 1}, {2, 3}});
  const GamArchitecture arch =
      FamilyToArchitecture(six, 4, {4}, TaskHead::Regression());
  EXPECT_EQ(arch.family.size(), 6u);
  Rng rng(6);
  EXPECT_EQ(SianModel::Build(arch, rng).num_subnets(), 6u);
  EXPECT_THROW(FamilyToArchitecture(six, 3, {4}, TaskHead::Regression()),
               ValidationError);
}

TEST(FamilyJsonTest, RoundTrip) {
  InteractionFamily family;
  family.Add({{0}, 0.1 + 0.2, 1.0});
  family.Add({{0, 2}, 3.5e-7, 0.5 + 1e-9});
  size_t d = 0;
  const InteractionFamily back = FamilyFromJson(FamilyToJson(family, 3), &d);
  EXPECT_EQ(d, 3u);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back.members()[1].set, InteractionSet({0, 2}));
  EXPECT_EQ(back.members()[0].strength, 0.1 + 0.2);
  EXPECT_EQ(back.members()[1].heredity, 0.5 + 1e-9);
  nlohmann::json bad = FamilyToJson(family, 2);
  EXPECT_THROW(FamilyFromJson(bad), ValidationError);
  EXPECT_THROW(FamilyFromJson(nlohmann::json::array()), FormatError);
}

}  // namespace
}  // namespace sian
