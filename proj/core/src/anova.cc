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

#include "sian/anova.h"

#include <bit>
#include <cmath>

#include "sian/errors.h"

namespace sian {
namespace {

constexpr size_t kMaxAxes = 20;

std::vector<size_t> Features(uint64_t mask) {
  std::vector<size_t> out;
  for (size_t i = 0; mask >> i; ++i) {
    if ((mask >> i) & 1) out.push_back(i);
  }
  return out;
}

size_t TableSize(const GridFunction& f, uint64_t mask) {
  size_t n = 1;
  for (size_t i : Features(mask)) n *= f.axes[i].size();
  return n;
}

// Calls visit(index_in_to, index_in_from) for every grid point over the
// features of `to`, where `from` must be a subset of `to`.
template <typename Visit>
void ForEachPoint(const GridFunction& f, uint64_t from, uint64_t to,
                  Visit visit) {
  const std::vector<size_t> feats = Features(to);
  // Stride of each feature of `to` inside the `from` table (0 if absent).
  std::vector<size_t> from_stride(feats.size(), 0);
  size_t stride = 1;
  for (size_t p = feats.size(); p-- > 0;) {
    if ((from >> feats[p]) & 1) {
      from_stride[p] = stride;
      stride *= f.axes[feats[p]].size();
    }
  }
  std::vector<size_t> counter(feats.size(), 0);
  const size_t total = TableSize(f, to);
  size_t from_index = 0;
  for (size_t to_index = 0; to_index < total; ++to_index) {
    visit(to_index, from_index, counter);
    // Odometer increment, last feature fastest.
    for (size_t p = feats.size(); p-- > 0;) {
      ++counter[p];
      from_index += from_stride[p];
      if (counter[p] < f.axes[feats[p]].size()) break;
      from_index -= from_stride[p] * counter[p];
      counter[p] = 0;
    }
  }
}

// Product of the weights of `mask`'s features at the counter position.
double PointWeight(const GridFunction& f, uint64_t mask,
                   const std::vector<size_t>& counter) {
  double w = 1.0;
  const std::vector<size_t> feats = Features(mask);
  for (size_t p = 0; p < feats.size(); ++p) w *= f.weights[feats[p]][counter[p]];
  return w;
}

// Averages the table over the axis of `feature` (a member of `mask`).
std::vector<double> Marginalize(const GridFunction& f, uint64_t mask,
                                const std::vector<double>& table,
                                size_t feature) {
  size_t outer = 1;
  size_t inner = 1;
  for (size_t i : Features(mask)) {
    if (i < feature) outer *= f.axes[i].size();
    if (i > feature) inner *= f.axes[i].size();
  }
  const auto& w = f.weights[feature];
  std::vector<double> out(outer * inner, 0.0);
  for (size_t o = 0; o < outer; ++o) {
    for (size_t i = 0; i < inner; ++i) {
      double sum = 0.0;
      for (size_t t = 0; t < w.size(); ++t) {
        sum += w[t] * table[(o * w.size() + t) * inner + i];
      }
      out[o * inner + i] = sum;
    }
  }
  return out;
}

}  // namespace

void GridFunction::Validate() const {
  if (weights.size() != axes.size()) {
    throw ShapeError("one weight vector per axis is required");
  }
  if (axes.size() > kMaxAxes) {
    throw ResourceError("too many axes for an exhaustive decomposition");
  }
  size_t total = 1;
  for (size_t i = 0; i < axes.size(); ++i) {
    if (axes[i].empty()) throw ShapeError("grid axis is empty");
    if (weights[i].size() != axes[i].size()) {
      throw ShapeError("axis " + std::to_string(i) +
                       " has a different number of weights and points");
    }
    double sum = 0.0;
    for (double w : weights[i]) {
      if (!(w >= 0.0)) throw DomainError("measure weights must be non-negative");
      sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
      throw DomainError("weights of axis " + std::to_string(i) +
                        " sum to " + std::to_string(sum) + ", not 1");
    }
    total *= axes[i].size();
  }
  if (values.size() != total) {
    throw ShapeError("grid has " + std::to_string(total) + " points but " +
                     std::to_string(values.size()) + " values");
  }
}

GridFunction TabulateGrid(
    std::vector<std::vector<double>> axes,
    const std::function<double(std::span<const double>)>& f) {
  GridFunction g;
  g.axes = std::move(axes);
  for (const auto& axis : g.axes) {
    g.weights.emplace_back(axis.size(), 1.0 / static_cast<double>(axis.size()));
  }
  const uint64_t full = g.axes.empty() ? 0 : (uint64_t{1} << g.axes.size()) - 1;
  g.values.resize(TableSize(g, full));
  std::vector<double> point(g.axes.size());
  ForEachPoint(g, 0, full, [&](size_t index, size_t, const auto& counter) {
    for (size_t i = 0; i < point.size(); ++i) point[i] = g.axes[i][counter[i]];
    g.values[index] = f(point);
  });
  return g;
}

std::vector<double> MidpointAxis(size_t n, double lo, double hi) {
  if (n == 0) throw DomainError("axis needs at least one point");
  std::vector<double> axis(n);
  const double step = (hi - lo) / static_cast<double>(n);
  for (size_t i = 0; i < n; ++i) {
    axis[i] = lo + (static_cast<double>(i) + 0.5) * step;
  }
  return axis;
}

const AnovaComponent& AnovaDecomposition::component(uint64_t subset) const {
  auto it = components_.find(subset);
  if (it == components_.end()) throw LookupError("no such component");
  return it->second;
}

std::vector<double> AnovaDecomposition::Reconstruct() const {
  const uint64_t full =
      f_.axes.empty() ? 0 : (uint64_t{1} << f_.axes.size()) - 1;
  std::vector<double> out(f_.values.size(), 0.0);
  for (const auto& [mask, comp] : components_) {
    ForEachPoint(f_, mask, full, [&](size_t to, size_t from, const auto&) {
      out[to] += comp.values[from];
    });
  }
  return out;
}

double AnovaDecomposition::SquaredNorm(uint64_t subset) const {
  return InnerProduct(subset, subset);
}

double AnovaDecomposition::InnerProduct(uint64_t a, uint64_t b) const {
  const AnovaComponent& ca = component(a);
  const AnovaComponent& cb = component(b);
  const uint64_t joint = a | b;
  std::vector<double> expanded(TableSize(f_, joint));
  ForEachPoint(f_, a, joint, [&](size_t to, size_t from, const auto&) {
    expanded[to] = ca.values[from];
  });
  double sum = 0.0;
  ForEachPoint(f_, b, joint, [&](size_t to, size_t from, const auto& counter) {
    sum += PointWeight(f_, joint, counter) * expanded[to] * cb.values[from];
  });
  return sum;
}

AnovaDecomposition AnovaDecompose(GridFunction f) {
  f.Validate();
  const size_t d = f.dimension();
  const uint64_t full = d == 0 ? 0 : (uint64_t{1} << d) - 1;

  // Conditional expectations E[f | x_I], each from the table of I plus the
  // smallest missing feature.
  std::vector<std::vector<double>> cond(full + 1);
  cond[full] = f.values;
  for (uint64_t mask = full; mask-- > 0;) {
    const size_t missing = static_cast<size_t>(std::countr_one(mask));
    const uint64_t parent = mask | (uint64_t{1} << missing);
    cond[mask] = Marginalize(f, parent, cond[parent], missing);
  }

  AnovaDecomposition out;
  for (uint64_t mask = 0; mask <= full; ++mask) {
    AnovaComponent comp;
    comp.subset = mask;
    comp.features = Features(mask);
    comp.values.assign(TableSize(f, mask), 0.0);
    const int degree = std::popcount(mask);
    for (uint64_t sub = mask;; sub = (sub - 1) & mask) {
      const bool negative = (degree - std::popcount(sub)) % 2 == 1;
      const std::vector<double>& table = cond[sub];
      ForEachPoint(f, sub, mask, [&](size_t to, size_t from, const auto&) {
        comp.values[to] += negative ? -table[from] : table[from];
      });
      if (sub == 0) break;
    }
    out.components_.emplace(mask, std::move(comp));
  }
  out.f_ = std::move(f);
  return out;
}

}  // namespace sian
