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

#include "sian/theory.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sian/errors.h"
#include "sian/rng.h"

namespace sian {
namespace {

double Binomial(size_t n, size_t k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double out = 1.0;
  for (size_t i = 1; i <= k; ++i) {
    out = out * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return std::round(out);
}

}  // namespace

double Zeta(double s) {
  if (!(s > 1.0)) throw DomainError("zeta is only summed for s > 1");
  constexpr int kTerms = 1000;
  const double n = kTerms + 1;
  // Tail sum_{j > kTerms} j^-s by Euler-Maclaurin from n = kTerms + 1; the
  // next correction is below s^3 n^(-s-3) / 720, under 1e-14 for s >= 2.
  double sum = std::pow(n, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(n, -s) +
               s * std::pow(n, -s - 1.0) / 12.0;
  // Smallest terms first.
  for (int j = kTerms; j >= 1; --j) sum += std::pow(j, -s);
  return sum;
}

double InteractionMass(size_t d, size_t K, int k) {
  if (k < 1) throw DomainError("smoothness order k must be at least 1");
  if (K > d) return 0.0;
  const double a = Zeta(2.0 * k) / 2.0;
  return Binomial(d, K) * std::pow(a, static_cast<double>(K)) /
         std::pow(1.0 + a, static_cast<double>(d));
}

HistogramBenefit EvaluateHistogramBenefit(const HistogramParams& p) {
  if (!(p.r > 0 && p.m > 0 && p.n > 0 && p.snr > 0 && p.samples > 0)) {
    throw DomainError("histogram parameters must be positive");
  }
  const double ratio = p.m / p.r;
  HistogramBenefit out;
  if (ratio == std::floor(ratio)) {
    // sin(pi * integer) is exactly zero.
    out.c = 0.0;
  } else {
    const double t = std::numbers::pi * ratio;
    out.c = std::pow(std::sin(t) / t, 2.0 * p.n);
  }
  out.beneficial = 1.0 + 1.0 / p.snr < (p.samples + 1.0) * out.c;
  return out;
}

std::vector<double> SampleSpectrumMass(size_t d, int k, size_t cutoff,
                                       size_t draws, Rng& rng) {
  if (k < 1) throw DomainError("smoothness order k must be at least 1");
  if (draws == 0) throw DomainError("need at least one draw");
  const size_t per_axis = cutoff + 1;
  size_t count = 1;
  for (size_t j = 0; j < d; ++j) count *= per_axis;

  // Decay factor and degree for every frequency vector.
  std::vector<double> scale(count);
  std::vector<size_t> degree(count);
  for (size_t f = 0; f < count; ++f) {
    double s = 1.0;
    size_t nonzero = 0;
    for (size_t j = 0, rest = f; j < d; ++j, rest /= per_axis) {
      const size_t m = rest % per_axis;
      if (m != 0) {
        s *= std::pow(static_cast<double>(m), -static_cast<double>(k));
        ++nonzero;
      }
    }
    scale[f] = s;
    degree[f] = nonzero;
  }

  std::vector<double> mass(d + 1, 0.0);
  for (size_t draw = 0; draw < draws; ++draw) {
    for (size_t f = 0; f < count; ++f) {
      const double a = rng.Normal() * scale[f];
      const double b = rng.Normal() * scale[f];
      mass[degree[f]] += std::ldexp(a * a + b * b, -static_cast<int>(degree[f]));
    }
  }
  for (double& m : mass) m /= static_cast<double>(draws);
  return mass;
}

}  // namespace sian
