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

#ifndef SIAN_THEORY_H_
#define SIAN_THEORY_H_

#include <cstddef>
#include <vector>

namespace sian {

class Rng;

// Riemann zeta for s > 1: the first 1000 terms summed directly plus an
// Euler-Maclaurin estimate of the tail. Throws DomainError for s <= 1.
double Zeta(double s);

// Share of the expected squared norm carried by all degree-K interactions of
// a random k-smooth Fourier signal in d dimensions:
// C(d, K) a^K / (1 + a)^d with a = zeta(2k) / 2. Zero for K > d. Throws
// DomainError for k < 1.
double InteractionMass(size_t d, size_t K, int k);

struct HistogramParams {
  // Histogram resolution (bins per axis).
  double r = 1.0;
  // Signal frequency.
  double m = 1.0;
  // Dimension.
  double n = 1.0;
  // Signal-to-noise ratio mu^2 / sigma^2.
  double snr = 1.0;
  // Samples per bin.
  double samples = 1.0;
};

struct HistogramBenefit {
  // (sin(pi m / r) / (pi m / r))^(2n).
  double c = 0.0;
  // Whether 1 + 1/snr < (samples + 1) c.
  bool beneficial = false;
};

// Throws DomainError unless every parameter is positive.
HistogramBenefit EvaluateHistogramBenefit(const HistogramParams& p);

// Draws the random k-smooth signal (cosine and sine coefficients ~ N(0, 1)
// scaled by prod_{m_j != 0} m_j^-k, frequencies 0..cutoff per axis) `draws`
// times and returns the mean mass per degree K = 0..d, where a frequency with
// K nonzero entries contributes 2^-K (a^2 + b^2).
std::vector<double> SampleSpectrumMass(size_t d, int k, size_t cutoff,
                                       size_t draws, Rng& rng);

}  // namespace sian

#endif  // SIAN_THEORY_H_
