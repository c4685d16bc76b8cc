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

#ifndef SIAN_ANOVA_H_
#define SIAN_ANOVA_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

namespace sian {

// A function tabulated on a finite product grid with a product probability
// measure. values is row-major over the axes, last axis fastest.
struct GridFunction {
  std::vector<std::vector<double>> axes;
  // Per-axis probabilities, same lengths as axes; each must sum to 1.
  std::vector<std::vector<double>> weights;
  std::vector<double> values;

  size_t dimension() const { return axes.size(); }
  // Throws ShapeError on inconsistent sizes and DomainError when a weight
  // vector is negative or does not sum to 1 within 1e-12.
  void Validate() const;
};

// Tabulates f on the grid with uniform weights per axis.
GridFunction TabulateGrid(
    std::vector<std::vector<double>> axes,
    const std::function<double(std::span<const double>)>& f);

// n midpoints of equal cells spanning [lo, hi].
std::vector<double> MidpointAxis(size_t n, double lo, double hi);

// One component f_I, tabulated over its own axes (ascending feature order).
struct AnovaComponent {
  uint64_t subset = 0;
  std::vector<size_t> features;
  std::vector<double> values;
};

// Functional ANOVA: f = sum over subsets I of f_I, where f_I comes from
// inclusion-exclusion over the conditional expectations E[f | x_I].
class AnovaDecomposition {
 public:
  const GridFunction& function() const { return f_; }
  const std::map<uint64_t, AnovaComponent>& components() const {
    return components_;
  }
  const AnovaComponent& component(uint64_t subset) const;

  // Sum of every component at each grid point of the full grid.
  std::vector<double> Reconstruct() const;
  // E[f_I^2] under the measure.
  double SquaredNorm(uint64_t subset) const;
  // E[f_I f_J] under the measure.
  double InnerProduct(uint64_t a, uint64_t b) const;

 private:
  friend AnovaDecomposition AnovaDecompose(GridFunction f);
  GridFunction f_;
  std::map<uint64_t, AnovaComponent> components_;
};

// Throws DomainError for an invalid measure and ResourceError past 20 axes.
AnovaDecomposition AnovaDecompose(GridFunction f);

}  // namespace sian

#endif  // SIAN_ANOVA_H_
