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

#include "sian/archipelago.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iomanip>
#include <map>

#include "sian/errors.h"
#include "sian/rng.h"

namespace sian {
namespace {

// Rows handed to the model per call while aggregating.
constexpr size_t kRowsPerCall = size_t{1} << 16;
constexpr size_t kMaxDegree = 20;

void CheckSet(const InteractionSet& set, size_t num_features) {
  if (set.max_index() >= num_features) {
    throw LookupError("interaction " + set.ToString() + " refers to feature " +
                      std::to_string(set.max_index()) + " but there are only " +
                      std::to_string(num_features));
  }
  if (set.degree() > kMaxDegree) {
    throw ResourceError("interaction " + set.ToString() +
                        " has too many corners to evaluate");
  }
}

// 1 / prod(x*_i - x'_i) over the set, or nullopt if some difference is zero.
std::optional<double> InverseStep(std::span<const double> x_star,
                                  std::span<const double> x_prime,
                                  const InteractionSet& set) {
  double inv = 1.0;
  for (size_t i : set.indices()) {
    const double h = x_star[i] - x_prime[i];
    if (h == 0.0) return std::nullopt;
    inv *= 1.0 / h;
  }
  return inv;
}

// Writes the 2^k corners for one context into rows [first, first + 2^k).
// Corner m takes x* at the p-th member of the set when bit p of m is set.
void FillCorners(std::span<const double> x_star, std::span<const double> x_prime,
                 std::span<const double> context, const InteractionSet& set,
                 Matrix& rows, size_t first) {
  const auto& idx = set.indices();
  const size_t corners = size_t{1} << idx.size();
  for (size_t m = 0; m < corners; ++m) {
    std::span<double> row = rows.row(first + m);
    std::copy(context.begin(), context.end(), row.begin());
    for (size_t p = 0; p < idx.size(); ++p) {
      row[idx[p]] = (m >> p) & 1 ? x_star[idx[p]] : x_prime[idx[p]];
    }
  }
}

// Squared scaled alternating sum over corner outputs, ascending corner order.
double Omega(std::span<const double> values, size_t degree, double inv_step) {
  double sum = 0.0;
  for (size_t m = 0; m < values.size(); ++m) {
    const bool negative = (degree - std::popcount(m)) % 2 == 1;
    sum += negative ? -values[m] : values[m];
  }
  const double secant = inv_step * sum;
  return secant * secant;
}

std::vector<double> Evaluate(const BatchFunction& f, const Matrix& rows) {
  std::vector<double> out = f(rows);
  if (out.size() != rows.rows()) {
    throw ShapeError("model returned " + std::to_string(out.size()) +
                     " values for " + std::to_string(rows.rows()) + " rows");
  }
  return out;
}

void CheckPoint(std::span<const double> p, size_t d, const char* what) {
  if (p.size() != d) {
    throw ShapeError(std::string(what) + " has " + std::to_string(p.size()) +
                     " coordinates, expected " + std::to_string(d));
  }
}

}  // namespace

Baseline Baseline::Fixed(std::vector<double> point) {
  for (double v : point) {
    if (!std::isfinite(v)) throw ValidationError("baseline must be finite");
  }
  return Baseline(Kind::kFixed, std::move(point));
}

Baseline Baseline::Zero(size_t num_features) {
  return Fixed(std::vector<double>(num_features, 0.0));
}

Baseline Baseline::Reflect() { return Baseline(Kind::kReflect, {}); }

void Baseline::For(std::span<const double> x_star, std::span<double> out) const {
  if (kind_ == Kind::kReflect) {
    for (size_t i = 0; i < x_star.size(); ++i) out[i] = -x_star[i];
  } else {
    std::copy(point_.begin(), point_.end(), out.begin());
  }
}

DetectionContext::DetectionContext(BatchFunction f, Matrix validation,
                                   Baseline baseline, size_t max_samples,
                                   uint64_t seed)
    : f_(std::move(f)),
      validation_(std::move(validation)),
      baseline_(std::move(baseline)) {
  if (!f_) throw ValidationError("detection needs a model function");
  if (validation_.rows() == 0) {
    throw ValidationError("validation set is empty");
  }
  if (max_samples == 0) throw ValidationError("sample cap must be positive");
  if (baseline_.kind() == Baseline::Kind::kFixed &&
      baseline_.point().size() != validation_.cols()) {
    throw ValidationError("baseline has " +
                          std::to_string(baseline_.point().size()) +
                          " coordinates but the data has " +
                          std::to_string(validation_.cols()) + " features");
  }
  const size_t n = validation_.rows();
  if (n <= max_samples) {
    sample_rows_.resize(n);
    for (size_t i = 0; i < n; ++i) sample_rows_[i] = i;
  } else {
    Rng rng(seed);
    sample_rows_ = rng.SampleWithoutReplacement(n, max_samples);
  }
}

std::optional<double> ArchiScore(const BatchFunction& f,
                                 std::span<const double> x_star,
                                 std::span<const double> x_prime,
                                 std::span<const double> context,
                                 const InteractionSet& set) {
  const size_t d = context.size();
  CheckPoint(x_star, d, "target");
  CheckPoint(x_prime, d, "baseline");
  CheckSet(set, d);
  const auto inv = InverseStep(x_star, x_prime, set);
  if (!inv) return std::nullopt;
  Matrix rows(size_t{1} << set.degree(), d);
  FillCorners(x_star, x_prime, context, set, rows, 0);
  return Omega(Evaluate(f, rows), set.degree(), *inv);
}

std::optional<double> TwoPointScore(const BatchFunction& f,
                                    std::span<const double> x_star,
                                    std::span<const double> x_prime,
                                    const InteractionSet& set) {
  const auto at_target = ArchiScore(f, x_star, x_prime, x_star, set);
  if (!at_target) return std::nullopt;
  const auto at_baseline = ArchiScore(f, x_star, x_prime, x_prime, set);
  return 0.5 * (*at_target + *at_baseline);
}

AggregateScore Aggregate(const DetectionContext& ctx, const InteractionSet& set) {
  const size_t d = ctx.num_features();
  CheckSet(set, d);
  const size_t corners = size_t{1} << set.degree();
  const size_t per_sample = 2 * corners;
  const size_t samples_per_call = std::max<size_t>(1, kRowsPerCall / per_sample);
  const auto& sample_rows = ctx.sample_rows();

  AggregateScore result;
  double sum = 0.0;
  std::vector<double> x_prime(d);
  std::vector<double> inv_steps;
  for (size_t begin = 0; begin < sample_rows.size();
       begin += samples_per_call) {
    const size_t end = std::min(sample_rows.size(), begin + samples_per_call);
    inv_steps.clear();
    std::vector<size_t> kept;
    for (size_t s = begin; s < end; ++s) {
      std::span<const double> x_star = ctx.validation().row(sample_rows[s]);
      ctx.baseline().For(x_star, x_prime);
      const auto inv = InverseStep(x_star, x_prime, set);
      if (!inv) {
        ++result.degenerate;
        continue;
      }
      kept.push_back(s);
      inv_steps.push_back(*inv);
    }
    if (kept.empty()) continue;
    Matrix rows(kept.size() * per_sample, d);
    for (size_t k = 0; k < kept.size(); ++k) {
      std::span<const double> x_star = ctx.validation().row(sample_rows[kept[k]]);
      ctx.baseline().For(x_star, x_prime);
      FillCorners(x_star, x_prime, x_star, set, rows, k * per_sample);
      FillCorners(x_star, x_prime, x_prime, set, rows,
                  k * per_sample + corners);
    }
    const std::vector<double> values = Evaluate(ctx.function(), rows);
    std::span<const double> all(values);
    for (size_t k = 0; k < kept.size(); ++k) {
      const double at_target =
          Omega(all.subspan(k * per_sample, corners), set.degree(), inv_steps[k]);
      const double at_baseline = Omega(
          all.subspan(k * per_sample + corners, corners), set.degree(),
          inv_steps[k]);
      sum += 0.5 * (at_target + at_baseline);
      ++result.samples_used;
    }
  }
  if (result.samples_used == 0) {
    throw DetectionError("every sample is degenerate for interaction " +
                         set.ToString());
  }
  result.mean = sum / static_cast<double>(result.samples_used);
  result.unreliable = 2 * result.degenerate > sample_rows.size();
  return result;
}

void ArchipelagoReport::Add(InteractionSet set, AggregateScore score) {
  entries_.push_back({std::move(set), score});
}

const AggregateScore* ArchipelagoReport::Find(const InteractionSet& set) const {
  for (const ScoreEntry& e : entries_) {
    if (e.set == set) return &e.score;
  }
  return nullptr;
}

std::vector<DegreeSummary> ArchipelagoReport::Summaries() const {
  std::map<size_t, DegreeSummary> by_degree;
  for (const ScoreEntry& e : entries_) {
    DegreeSummary& s = by_degree[e.set.degree()];
    const double v = e.score.mean;
    if (s.count == 0) {
      s.degree = e.set.degree();
      s.min = s.max = v;
    } else {
      s.min = std::min(s.min, v);
      s.max = std::max(s.max, v);
    }
    s.mean += v;
    ++s.count;
  }
  std::vector<DegreeSummary> out;
  for (auto& [degree, s] : by_degree) {
    s.mean /= static_cast<double>(s.count);
    out.push_back(s);
  }
  return out;
}

void ArchipelagoReport::WriteCsv(std::ostream& out) const {
  const auto old_precision = out.precision(17);
  out << "degree,indices,mean_score,n_samples_used\n";
  for (const ScoreEntry& e : entries_) {
    out << e.set.degree() << ',' << e.set.ToString() << ',' << e.score.mean
        << ',' << e.score.samples_used << '\n';
  }
  out.precision(old_precision);
}

ArchipelagoReport ScoreSets(const DetectionContext& ctx,
                            std::span<const InteractionSet> sets) {
  ArchipelagoReport report;
  for (const InteractionSet& s : sets) report.Add(s, Aggregate(ctx, s));
  return report;
}

}  // namespace sian
