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

#ifndef SIAN_ARCHIPELAGO_H_
#define SIAN_ARCHIPELAGO_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "sian/interaction_set.h"
#include "sian/tensor.h"

namespace sian {

// Evaluates a model at every row of a batch, one output per row. Must be pure.
using BatchFunction = std::function<std::vector<double>(const Matrix&)>;

// Where the secant is anchored for each validation sample.
class Baseline {
 public:
  enum class Kind {
    // The same point x' for every sample.
    kFixed,
    // x' = -x* per sample. On {-1,1}^d this flips every coordinate.
    kReflect,
  };

  static Baseline Fixed(std::vector<double> point);
  static Baseline Zero(size_t num_features);
  static Baseline Reflect();

  Kind kind() const { return kind_; }
  const std::vector<double>& point() const { return point_; }

  // Baseline paired with target sample x_star, written into out.
  void For(std::span<const double> x_star, std::span<double> out) const;

 private:
  Baseline(Kind kind, std::vector<double> point)
      : kind_(kind), point_(std::move(point)) {}

  Kind kind_;
  std::vector<double> point_;
};

// Model, baseline and the validation samples the strengths are averaged over.
// When the validation set has more than max_samples rows, a seeded subset is
// drawn once without replacement and reused for every interaction set.
class DetectionContext {
 public:
  static constexpr size_t kDefaultMaxSamples = 1024;

  // Throws ValidationError for an empty validation set, a non-finite
  // baseline or a baseline of the wrong length.
  DetectionContext(BatchFunction f, Matrix validation, Baseline baseline,
                   size_t max_samples = kDefaultMaxSamples, uint64_t seed = 0);

  const BatchFunction& function() const { return f_; }
  size_t num_features() const { return validation_.cols(); }
  const Matrix& validation() const { return validation_; }
  const Baseline& baseline() const { return baseline_; }
  // Validation rows used, ascending.
  const std::vector<size_t>& sample_rows() const { return sample_rows_; }

 private:
  BatchFunction f_;
  Matrix validation_;
  Baseline baseline_;
  std::vector<size_t> sample_rows_;
};

// Squared, scaled alternating sum of f over the 2^|J| corners that take x* or
// x' on J and the context everywhere else. Returns nullopt when x*_i == x'_i
// for some i in J (no secant along that direction).
std::optional<double> ArchiScore(const BatchFunction& f,
                                 std::span<const double> x_star,
                                 std::span<const double> x_prime,
                                 std::span<const double> context,
                                 const InteractionSet& set);

// Mean of ArchiScore with the context at x* and at x'.
std::optional<double> TwoPointScore(const BatchFunction& f,
                                    std::span<const double> x_star,
                                    std::span<const double> x_prime,
                                    const InteractionSet& set);

struct AggregateScore {
  double mean = 0.0;
  size_t samples_used = 0;
  size_t degenerate = 0;
  // More than half of the samples were degenerate for this set.
  bool unreliable = false;
};

// Mean two-point strength over the context's samples, skipping degenerate
// ones. Throws DetectionError if every sample is degenerate and LookupError
// if the set has an index >= the feature count.
AggregateScore Aggregate(const DetectionContext& ctx, const InteractionSet& set);

struct ScoreEntry {
  InteractionSet set;
  AggregateScore score;
};

struct DegreeSummary {
  size_t degree = 0;
  size_t count = 0;
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
};

// Strengths of every evaluated set, in evaluation order.
class ArchipelagoReport {
 public:
  void Add(InteractionSet set, AggregateScore score);

  const std::vector<ScoreEntry>& entries() const { return entries_; }
  // Nullptr when the set was not scored.
  const AggregateScore* Find(const InteractionSet& set) const;
  std::vector<DegreeSummary> Summaries() const;

  // Columns: degree,indices,mean_score,n_samples_used.
  void WriteCsv(std::ostream& out) const;

 private:
  std::vector<ScoreEntry> entries_;
};

ArchipelagoReport ScoreSets(const DetectionContext& ctx,
                            std::span<const InteractionSet> sets);

}  // namespace sian

#endif  // SIAN_ARCHIPELAGO_H_
