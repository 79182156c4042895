// Copyright 2026 The cpsim Authors
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

#include <benchmark/benchmark.h>

#include "cpsim/cpsim.hpp"

namespace {

using namespace cpsim;

// Fixed sweep count so time scales with work, not convergence.
void BM_AlsSweeps(benchmark::State& st) {
  std::mt19937_64 rng(3);
  const CPState x = random_complex_state(20, st.range(0), rng);
  AlsConfig cfg;
  cfg.rank = st.range(1);
  cfg.max_sweeps = 5;
  cfg.tol = 0.0;
  for (auto _ : st) benchmark::DoNotOptimize(cp_als(x, cfg));
  st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_AlsSweeps)
    ->ArgsProduct({{64, 128, 256, 512}, {8}})
    ->Args({256, 32})
    ->Args({256, 128})
    ->Unit(benchmark::kMillisecond);

void BM_DirectEliminate(benchmark::State& st) {
  // Half the terms are rescaled copies of the other half.
  std::mt19937_64 rng(5);
  const CPState base = random_complex_state(20, st.range(0) / 2, rng);
  const CPState x = concat_terms(base, scale(base, cplx(0.5, 0.25)));
  for (auto _ : st) benchmark::DoNotOptimize(direct_eliminate(x));
}
BENCHMARK(BM_DirectEliminate)->RangeMultiplier(4)->Range(16, 1024);

void BM_InnerProduct(benchmark::State& st) {
  std::mt19937_64 rng(9);
  const CPState x = random_complex_state(30, st.range(0), rng);
  const CPState y = random_complex_state(30, st.range(0), rng);
  for (auto _ : st) benchmark::DoNotOptimize(inner_product(x, y));
}
BENCHMARK(BM_InnerProduct)->RangeMultiplier(4)->Range(4, 256);

}  // namespace
