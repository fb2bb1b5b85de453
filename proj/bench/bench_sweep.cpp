// Copyright 2026 The nhentropy Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial reference vs OpenMP sweep over the figure parameter grid.

#include <benchmark/benchmark.h>

#include "nhe/sweep.hpp"

namespace {

void sweep(benchmark::State& state, nhe::Execution exec, nhe::PropagationConfig::Mode mode) {
  const auto points = nhe::figure_parameter_grid(1.0);
  const auto grid = nhe::uniform_grid(4.0, static_cast<std::size_t>(state.range(0)));
  nhe::PropagationConfig config;
  config.mode = mode;
  for (auto _ : state) {
    auto profiles = nhe::two_level_profiles(points, grid, config, exec);
    benchmark::DoNotOptimize(profiles);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(points.size()));
}

void BM_ExactSerial(benchmark::State& s) { sweep(s, nhe::Execution::serial, nhe::PropagationConfig::Mode::exact); }
void BM_ExactParallel(benchmark::State& s) { sweep(s, nhe::Execution::parallel, nhe::PropagationConfig::Mode::exact); }
void BM_Rk4Serial(benchmark::State& s) { sweep(s, nhe::Execution::serial, nhe::PropagationConfig::Mode::rk4); }
void BM_Rk4Parallel(benchmark::State& s) { sweep(s, nhe::Execution::parallel, nhe::PropagationConfig::Mode::rk4); }

}  // namespace

BENCHMARK(BM_ExactSerial)->Arg(81)->Arg(401)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExactParallel)->Arg(81)->Arg(401)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Rk4Serial)->Arg(81)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Rk4Parallel)->Arg(81)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
