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

#ifndef SIAN_ORACLE_SUITE_H_
#define SIAN_ORACLE_SUITE_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sian/fourier.h"

namespace sian {

class Rng;

struct OracleCheck {
  std::string name;
  bool passed = false;
  // Largest deviation observed (or failure count for counting checks).
  double max_deviation = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct OracleReport {
  std::string suite;
  std::vector<OracleCheck> checks;

  size_t failures() const;
  // {"suite": ..., "failures": n, "checks": [{"name", "passed",
  //  "max_deviation", "tolerance", "detail"}]}
  nlohmann::json ToJson() const;
};

struct OracleOptions {
  uint64_t seed = 0;
  size_t lemma_functions = 200;
  size_t recovery_seeds = 100;
  size_t anova_functions = 50;
  size_t spectrum_draws = 2000;
};

// Random cube function with values uniform in [-1, 1].
std::vector<double> RandomCubeFunction(size_t d, Rng& rng);

// Random sparse multilinear function on d features: 1 to max_terms distinct
// nonempty monomials with |c_I| in [0.1, 1] and random signs. Returns the
// cube table and the support.
struct SparseCubeFunction {
  std::vector<double> values;
  std::vector<uint64_t> support;
};
SparseCubeFunction RandomSparseCubeFunction(size_t d, size_t max_terms, Rng& rng);

// Checks on the exact Archipelago expectation against the upper-cone mass.
OracleReport RunLemmaSuite(const OracleOptions& options);
// Checks that interaction selection with exact cube evaluation returns the
// downward closure of sparse supports.
OracleReport RunRecoverySuite(const OracleOptions& options);
// Reconstruction, orthogonality and Parseval of grid decompositions, plus
// the worked example 1 + x + xy.
OracleReport RunAnovaSuite(const OracleOptions& options);
// Interaction-mass normalization, spectrum sampling and histogram cases.
OracleReport RunTheorySuite(const OracleOptions& options);

// Suite names: lemma, recovery, anova, theory, all. Throws ConfigError for
// anything else.
OracleReport RunOracleSuite(const std::string& name, const OracleOptions& options);

}  // namespace sian

#endif  // SIAN_ORACLE_SUITE_H_
