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

#include "sian/oracle_suite.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <set>

#include "sian/anova.h"
#include "sian/archipelago.h"
#include "sian/errors.h"
#include "sian/fis.h"
#include "sian/rng.h"
#include "sian/theory.h"

namespace sian {
namespace {

OracleCheck Bound(std::string name, double deviation, double tolerance,
                  std::string detail = {}) {
  return {std::move(name), deviation < tolerance, deviation, tolerance,
          std::move(detail)};
}

// Looks up each row (a point of {-1,1}^d) in the cube table.
BatchFunction CubeLookup(std::vector<double> values, size_t d) {
  return [values = std::move(values), d](const Matrix& rows) {
    std::vector<double> out(rows.rows());
    for (size_t r = 0; r < rows.rows(); ++r) {
      uint64_t b = 0;
      for (size_t i = 0; i < d; ++i) {
        if (rows(r, i) < 0.0) b |= uint64_t{1} << i;
      }
      out[r] = values[b];
    }
    return out;
  };
}

Matrix CubeRows(size_t d) {
  Matrix rows(size_t{1} << d, d);
  for (uint64_t b = 0; b < rows.rows(); ++b) {
    const std::vector<double> x = CubePoint(b, d);
    std::copy(x.begin(), x.end(), rows.row(b).begin());
  }
  return rows;
}

GridFunction RandomGridFunction(Rng& rng) {
  const size_t d = 2 + rng.UniformInt(2);
  std::vector<std::vector<double>> axes(d);
  GridFunction g;
  for (size_t i = 0; i < d; ++i) {
    const size_t n = 2 + rng.UniformInt(5);
    std::vector<double> w(n);
    double total = 0.0;
    for (size_t t = 0; t < n; ++t) {
      axes[i].push_back(static_cast<double>(t));
      w[t] = rng.Uniform(0.1, 1.0);
      total += w[t];
    }
    for (double& v : w) v /= total;
    g.weights.push_back(std::move(w));
  }
  g.axes = std::move(axes);
  size_t size = 1;
  for (const auto& a : g.axes) size *= a.size();
  for (size_t p = 0; p < size; ++p) g.values.push_back(rng.Uniform(-1.0, 1.0));
  return g;
}

}  // namespace

size_t OracleReport::failures() const {
  return static_cast<size_t>(std::count_if(
      checks.begin(), checks.end(), [](const OracleCheck& c) { return !c.passed; }));
}

nlohmann::json OracleReport::ToJson() const {
  nlohmann::json list = nlohmann::json::array();
  for (const OracleCheck& c : checks) {
    list.push_back({{"name", c.name},
                    {"passed", c.passed},
                    {"max_deviation", c.max_deviation},
                    {"tolerance", c.tolerance},
                    {"detail", c.detail}});
  }
  return {{"suite", suite}, {"failures", failures()}, {"checks", list}};
}

std::vector<double> RandomCubeFunction(size_t d, Rng& rng) {
  std::vector<double> values(size_t{1} << d);
  for (double& v : values) v = rng.Uniform(-1.0, 1.0);
  return values;
}

SparseCubeFunction RandomSparseCubeFunction(size_t d, size_t max_terms,
                                            Rng& rng) {
  const uint64_t subsets = uint64_t{1} << d;
  const size_t terms = 1 + rng.UniformInt(max_terms);
  std::set<uint64_t> support;
  while (support.size() < terms) support.insert(1 + rng.UniformInt(subsets - 1));
  std::vector<double> coefficients(subsets, 0.0);
  for (uint64_t s : support) {
    const double magnitude = rng.Uniform(0.1, 1.0);
    coefficients[s] = rng.Uniform() < 0.5 ? -magnitude : magnitude;
  }
  return {InverseFourierTransform(FourierTable(d, std::move(coefficients))),
          std::vector<uint64_t>(support.begin(), support.end())};
}

OracleReport RunLemmaSuite(const OracleOptions& options) {
  Rng rng(options.seed);
  double worst = 0.0;
  double worst_parseval = 0.0;
  for (size_t t = 0; t < options.lemma_functions; ++t) {
    const size_t d = 3 + t % 3;
    const std::vector<double> values = RandomCubeFunction(d, rng);
    const FourierTable table = FourierTransform(values);
    for (uint64_t a = 0; a < values.size(); ++a) {
      worst = std::max(worst, std::abs(ExactArchipelagoExpectation(values, a) -
                                       UpperConeMass(table, a)));
    }
    double mean_square = 0.0;
    for (double v : values) mean_square += v * v;
    mean_square /= static_cast<double>(values.size());
    worst_parseval =
        std::max(worst_parseval, std::abs(mean_square - UpperConeMass(table, 0)));
  }
  const std::string detail =
      std::to_string(options.lemma_functions) + " functions, d in {3,4,5}";
  return {"lemma",
          {Bound("archipelago expectation equals upper-cone mass", worst, 1e-10,
                 detail),
           Bound("parseval", worst_parseval, 1e-12, detail)}};
}

OracleReport RunRecoverySuite(const OracleOptions& options) {
  constexpr size_t kDim = 8;
  FisConfig config;
  config.max_order = kDim;
  config.tau = 0.5;
  config.theta = {1e-4};
  size_t failures = 0;
  std::string first_failure;
  const Matrix cube = CubeRows(kDim);
  for (size_t s = 0; s < options.recovery_seeds; ++s) {
    Rng rng(options.seed + s);
    SparseCubeFunction f = RandomSparseCubeFunction(kDim, 5, rng);
    std::vector<InteractionSet> support;
    for (uint64_t m : f.support) support.push_back(InteractionSet::FromMask(m));
    const std::vector<InteractionSet> expected = DownwardClosure(support);
    DetectionContext ctx(CubeLookup(std::move(f.values), kDim), cube,
                         Baseline::Reflect(), cube.rows());
    const FisResult result = SelectInteractions(ctx, config);
    if (result.family.Sets() != expected) {
      if (failures++ == 0) first_failure = "seed " + std::to_string(options.seed + s);
    }
  }
  return {"recovery",
          {{"fis recovers the downward closure of the support",
            failures == 0, static_cast<double>(failures), 1.0,
            failures == 0 ? std::to_string(options.recovery_seeds) + " seeds"
                          : "first failure at " + first_failure}}};
}

OracleReport RunAnovaSuite(const OracleOptions& options) {
  Rng rng(options.seed);
  double reconstruction = 0.0;
  double orthogonality = 0.0;
  double parseval = 0.0;
  for (size_t t = 0; t < options.anova_functions; ++t) {
    GridFunction g = RandomGridFunction(rng);
    const AnovaDecomposition dec = AnovaDecompose(g);
    const std::vector<double> rebuilt = dec.Reconstruct();
    for (size_t p = 0; p < rebuilt.size(); ++p) {
      reconstruction = std::max(reconstruction, std::abs(rebuilt[p] - g.values[p]));
    }
    const uint64_t count = uint64_t{1} << g.dimension();
    double norms = 0.0;
    for (uint64_t a = 0; a < count; ++a) {
      norms += dec.SquaredNorm(a);
      for (uint64_t b = a + 1; b < count; ++b) {
        orthogonality = std::max(orthogonality, std::abs(dec.InnerProduct(a, b)));
      }
    }
    // E[f^2] under the product measure.
    GridFunction squared = g;
    for (double& v : squared.values) v *= v;
    const double mean_square = AnovaDecompose(squared).component(0).values[0];
    parseval = std::max(parseval, std::abs(norms - mean_square));
  }
  const std::string detail =
      std::to_string(options.anova_functions) + " random grid functions";

  auto example = [](std::vector<double> axis) {
    return AnovaDecompose(TabulateGrid(
        {axis, axis}, [](std::span<const double> p) { return 1 + p[0] + p[0] * p[1]; }));
  };
  // Bit 0 is x, bit 1 is y.
  const double expected[4] = {1.0, 1.0 / 3.0, 0.0, 1.0 / 9.0};
  const AnovaDecomposition binary = example({-1.0, 1.0});
  const double binary_expected[4] = {1.0, 1.0, 0.0, 1.0};
  double binary_dev = 0.0;
  for (uint64_t m = 0; m < 4; ++m) {
    binary_dev = std::max(binary_dev,
                          std::abs(binary.SquaredNorm(m) - binary_expected[m]));
  }
  const AnovaDecomposition fine = example(MidpointAxis(1000, -1.0, 1.0));
  double fine_dev = 0.0;
  for (uint64_t m = 0; m < 4; ++m) {
    fine_dev = std::max(fine_dev, std::abs(fine.SquaredNorm(m) - expected[m]));
  }
  return {"anova",
          {Bound("reconstruction", reconstruction, 1e-10, detail),
           Bound("orthogonality", orthogonality, 1e-10, detail),
           Bound("parseval", parseval, 1e-10, detail),
           Bound("1 + x + xy on {-1,1}^2 has norms 1, 1, 0, 1", binary_dev, 1e-12),
           Bound("1 + x + xy on a 1000-point grid has norms 1, 1/3, 0, 1/9",
                 fine_dev, 1e-3)}};
}

OracleReport RunTheorySuite(const OracleOptions& options) {
  double normalization = 0.0;
  for (int k = 1; k <= 3; ++k) {
    for (size_t d = 1; d <= 30; ++d) {
      double total = 0.0;
      for (size_t K = 0; K <= d; ++K) total += InteractionMass(d, K, k);
      normalization = std::max(normalization, std::abs(total - 1.0));
    }
  }

  constexpr size_t kDim = 3;
  constexpr int kSmooth = 2;
  Rng rng(options.seed);
  const std::vector<double> mass =
      SampleSpectrumMass(kDim, kSmooth, 20, options.spectrum_draws, rng);
  double total = 0.0;
  for (double m : mass) total += m;
  double spectrum = 0.0;
  for (size_t K = 0; K <= kDim; ++K) {
    const double predicted = InteractionMass(kDim, K, kSmooth);
    spectrum = std::max(spectrum, std::abs(mass[K] / total - predicted) / predicted);
  }

  const double quarter = std::pow(std::sin(std::numbers::pi / 4) / (std::numbers::pi / 4), 2.0);
  const double at_quarter = EvaluateHistogramBenefit({4, 1, 1, 1, 1}).c;
  const double at_full = EvaluateHistogramBenefit({4, 4, 1, 1, 1}).c;
  return {"theory",
          {Bound("interaction mass sums to 1 for d <= 30, k in {1,2,3}",
                 normalization, 1e-12),
           Bound("single-feature mass at k = 1",
                 std::abs(InteractionMass(1, 1, 1) - 0.451287), 1e-6),
           Bound("sampled spectrum shares match interaction mass (relative)",
                 spectrum, 0.05,
                 "d = 3, k = 2, " + std::to_string(options.spectrum_draws) +
                     " draws"),
           Bound("histogram factor at n = 1, m = 1, r = 4",
                 std::abs(at_quarter - quarter), 1e-15),
           Bound("histogram factor vanishes at m = r", std::abs(at_full), 1e-300)}};
}

OracleReport RunOracleSuite(const std::string& name,
                            const OracleOptions& options) {
  if (name == "lemma") return RunLemmaSuite(options);
  if (name == "recovery") return RunRecoverySuite(options);
  if (name == "anova") return RunAnovaSuite(options);
  if (name == "theory") return RunTheorySuite(options);
  if (name == "all") {
    OracleReport all{"all", {}};
    for (const char* suite : {"lemma", "recovery", "anova", "theory"}) {
      for (OracleCheck& c : RunOracleSuite(suite, options).checks) {
        c.name = std::string(suite) + ": " + c.name;
        all.checks.push_back(std::move(c));
      }
    }
    return all;
  }
  throw ConfigError("unknown oracle suite '" + name +
                    "' (expected lemma, recovery, anova, theory or all)");
}

}  // namespace sian
