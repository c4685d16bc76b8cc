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

#include "sian/fourier.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

#include "sian/errors.h"

namespace sian {
namespace {

size_t DimensionOf(size_t table_size) {
  if (table_size == 0 || !std::has_single_bit(table_size)) {
    throw ShapeError("cube table size " + std::to_string(table_size) +
                     " is not a power of two");
  }
  return static_cast<size_t>(std::countr_zero(table_size));
}

// In-place unnormalized Walsh-Hadamard transform.
void Hadamard(std::vector<double>& v) {
  for (size_t half = 1; half < v.size(); half *= 2) {
    for (size_t start = 0; start < v.size(); start += 2 * half) {
      for (size_t i = start; i < start + half; ++i) {
        const double a = v[i];
        const double b = v[i + half];
        v[i] = a + b;
        v[i + half] = a - b;
      }
    }
  }
}

}  // namespace

std::vector<double> CubePoint(uint64_t b, size_t d) {
  std::vector<double> x(d);
  for (size_t i = 0; i < d; ++i) x[i] = (b >> i) & 1 ? -1.0 : 1.0;
  return x;
}

std::vector<double> TabulateCube(
    size_t d, const std::function<double(std::span<const double>)>& f) {
  if (d > kMaxFourierDimension) {
    throw ResourceError("cube of dimension " + std::to_string(d) +
                        " is too large to tabulate");
  }
  std::vector<double> values(size_t{1} << d);
  for (uint64_t b = 0; b < values.size(); ++b) values[b] = f(CubePoint(b, d));
  return values;
}

FourierTable::FourierTable(size_t d, std::vector<double> coefficients)
    : d_(d), coefficients_(std::move(coefficients)) {
  if (d_ > kMaxFourierDimension) {
    throw ResourceError("fourier table dimension too large");
  }
  if (coefficients_.size() != (size_t{1} << d_)) {
    throw ShapeError("fourier table needs 2^d coefficients");
  }
}

std::vector<uint64_t> FourierTable::Support(double tolerance) const {
  std::vector<uint64_t> out;
  for (uint64_t s = 0; s < coefficients_.size(); ++s) {
    if (std::abs(coefficients_[s]) > tolerance) out.push_back(s);
  }
  return out;
}

FourierTable FourierTransform(std::span<const double> values) {
  const size_t d = DimensionOf(values.size());
  if (d > kMaxFourierDimension) {
    throw ResourceError("cube of dimension " + std::to_string(d) +
                        " is too large to transform");
  }
  std::vector<double> c(values.begin(), values.end());
  Hadamard(c);
  const double scale = 1.0 / static_cast<double>(c.size());
  for (double& v : c) v *= scale;
  return FourierTable(d, std::move(c));
}

std::vector<double> InverseFourierTransform(const FourierTable& table) {
  std::vector<double> values = table.coefficients();
  Hadamard(values);
  return values;
}

double UpperConeMass(const FourierTable& table, uint64_t subset) {
  const auto& c = table.coefficients();
  if (subset >= c.size()) {
    throw LookupError("subset refers to a feature beyond the dimension");
  }
  double sum = 0.0;
  for (uint64_t s = 0; s < c.size(); ++s) {
    if ((s & subset) == subset) sum += c[s] * c[s];
  }
  return sum;
}

double ExactArchipelagoExpectation(std::span<const double> values,
                                   uint64_t subset) {
  const size_t d = DimensionOf(values.size());
  if (d > kMaxEnumerationDimension) {
    throw ResourceError("exact expectation enumerates 4^d pairs; d = " +
                        std::to_string(d) + " is too large");
  }
  if (subset >= values.size()) {
    throw LookupError("subset refers to a feature beyond the dimension");
  }
  const uint64_t full = values.size() - 1;
  const int degree = std::popcount(subset);
  // Submasks of the subset, each with its sign.
  std::vector<uint64_t> parts;
  std::vector<bool> negative;
  for (uint64_t c = subset;; c = (c - 1) & subset) {
    parts.push_back(c);
    negative.push_back((degree - std::popcount(c)) % 2 == 1);
    if (c == 0) break;
  }
  double total = 0.0;
  for (uint64_t x = 0; x <= full; ++x) {
    for (uint64_t y = 0; y <= full; ++y) {
      double sum = 0.0;
      for (size_t p = 0; p < parts.size(); ++p) {
        const double v = values[(x & parts[p]) | (y & ~parts[p] & full)];
        sum += negative[p] ? -v : v;
      }
      total += sum * sum;
    }
  }
  const double pairs = static_cast<double>(values.size()) *
                       static_cast<double>(values.size());
  return total / pairs / static_cast<double>(uint64_t{1} << degree);
}

std::vector<InteractionSet> DownwardClosure(std::span<const InteractionSet> sets) {
  std::set<InteractionSet> closure;
  for (const InteractionSet& s : sets) {
    const auto& idx = s.indices();
    if (idx.size() >= 64) {
      throw ResourceError("closure of a set with 64 or more features");
    }
    const uint64_t count = uint64_t{1} << idx.size();
    for (uint64_t m = 1; m < count; ++m) {
      std::vector<size_t> sub;
      for (size_t p = 0; p < idx.size(); ++p) {
        if ((m >> p) & 1) sub.push_back(idx[p]);
      }
      closure.insert(InteractionSet(std::move(sub)));
    }
  }
  std::vector<InteractionSet> out(closure.begin(), closure.end());
  std::sort(out.begin(), out.end(), DegreeLexLess());
  return out;
}

}  // namespace sian
