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

#include <benchmark/benchmark.h>

#include <vector>

#include "sian/rng.h"
#include "sian/sian_model.h"
#include "sian/tensor.h"
#include "sian/training.h"

namespace sian {
namespace {

// All-pairs family on d features.
SianModel AllPairsModel(size_t d, ExecutionMode mode) {
  GamArchitecture arch;
  arch.num_features = d;
  for (size_t i = 0; i < d; ++i) {
    for (size_t j = i + 1; j < d; ++j) arch.family.push_back({i, j});
  }
  Rng rng(1);
  return SianModel::Build(arch, rng).Converted(mode);
}

void BM_Forward(benchmark::State& state) {
  const auto mode = static_cast<ExecutionMode>(state.range(0));
  const SianModel model = AllPairsModel(15, mode);
  Rng rng(2);
  const Matrix x = Matrix::Random(256, 15, rng);
  for (auto _ : state) benchmark::DoNotOptimize(model.Forward(x));
  state.SetLabel(ModeName(mode));
}
BENCHMARK(BM_Forward)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_TrainEpoch(benchmark::State& state) {
  const SianModel model = AllPairsModel(15, ExecutionMode::kDefault);
  Rng rng(3);
  const Matrix x = Matrix::Random(1024, 15, rng);
  std::vector<double> y(x.rows());
  for (size_t r = 0; r < x.rows(); ++r) y[r] = x(r, 0) * x(r, 1);
  TrainConfig config;
  config.max_epochs = 1;
  config.backend = state.range(0) ? TrainingBackend::kPerShape
                                  : TrainingBackend::kBlockSparse;
  for (auto _ : state) {
    benchmark::DoNotOptimize(TrainSian(model, x, y, Matrix(0, 15), {}, config));
  }
  state.SetLabel(state.range(0) ? "per_shape" : "block_sparse");
}
BENCHMARK(BM_TrainEpoch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_MatMul(benchmark::State& state) {
  const size_t n = static_cast<size_t>(state.range(0));
  Rng rng(4);
  const Matrix a = Matrix::Random(n, n, rng);
  const Matrix b = Matrix::Random(n, n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(MatMul(a, b));
}
BENCHMARK(BM_MatMul)->Arg(64)->Arg(256);

}  // namespace
}  // namespace sian

BENCHMARK_MAIN();
