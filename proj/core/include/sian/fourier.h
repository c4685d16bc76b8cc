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

#ifndef SIAN_FOURIER_H_
#define SIAN_FOURIER_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "sian/interaction_set.h"

namespace sian {

// Functions on {-1,1}^d are stored as tables of 2^d values indexed by a
// bitmask b, with coordinate x_i = -1 when bit i of b is set and +1 otherwise.
// Subsets of [d] are bitmasks as well.

constexpr size_t kMaxFourierDimension = 20;
constexpr size_t kMaxEnumerationDimension = 10;

// Coordinates of cube point b.
std::vector<double> CubePoint(uint64_t b, size_t d);

// Tabulates f over the whole cube.
std::vector<double> TabulateCube(
    size_t d, const std::function<double(std::span<const double>)>& f);

// Multilinear coefficients c_I of a cube function.
class FourierTable {
 public:
  FourierTable(size_t d, std::vector<double> coefficients);

  size_t dimension() const { return d_; }
  double coefficient(uint64_t subset) const { return coefficients_[subset]; }
  const std::vector<double>& coefficients() const { return coefficients_; }

  // Subsets with a nonzero coefficient, ascending by mask.
  std::vector<uint64_t> Support(double tolerance = 0.0) const;

 private:
  size_t d_;
  std::vector<double> coefficients_;
};

// c_I = mean over the cube of f(x) * prod_{i in I} x_i, by a fast
// Walsh-Hadamard transform. Throws ShapeError unless the table size is a
// power of two and ResourceError beyond kMaxFourierDimension.
FourierTable FourierTransform(std::span<const double> values);
// Values of sum_I c_I x_I at every cube point.
std::vector<double> InverseFourierTransform(const FourierTable& table);

// Sum of c_I^2 over every I containing `subset`.
double UpperConeMass(const FourierTable& table, uint64_t subset);

// 2^-|A| E_{x,y}[(sum_{C subset A} (-1)^{|A|-|C|} f(x on C, y elsewhere))^2]
// with x, y independent and uniform on the cube, by enumerating all 4^d
// pairs. Throws ResourceError beyond kMaxEnumerationDimension.
double ExactArchipelagoExpectation(std::span<const double> values,
                                   uint64_t subset);

// Every nonempty subset of a member, sorted by degree then lexicographically.
std::vector<InteractionSet> DownwardClosure(std::span<const InteractionSet> sets);

}  // namespace sian

#endif  // SIAN_FOURIER_H_
