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

CPState bench_state(int n, Index r) {
  std::mt19937_64 rng(7);
  return random_complex_state(n, r, rng);
}

void BM_OneQubit(benchmark::State& st) {
  const CPState x = bench_state(20, st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(apply_one_qubit(x, 3, gates::H()));
  st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_OneQubit)->RangeMultiplier(4)->Range(4, 1024)->Complexity();

void BM_Controlled(benchmark::State& st) {
  const CPState x = bench_state(20, st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(apply_controlled(x, 2, 1, 9, gates::Rn(4)));
  st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_Controlled)->RangeMultiplier(4)->Range(4, 1024)->Complexity();

void BM_GroverOracle(benchmark::State& st) {
  const int n = 20;
  std::vector<Bits> marked;
  for (int i = 0; i < st.range(0); ++i) marked.push_back(bits_from_index(37 * i + 1, n));
  const GroverOps g = build_grover(n, marked);
  const CPState x = bench_state(n, 2);
  for (auto _ : st) benchmark::DoNotOptimize(apply_gate(x, g.oracle));
}
BENCHMARK(BM_GroverOracle)->Arg(1)->Arg(20);

void BM_QftBasis(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const Circuit c = build_qft(n);
  RunConfig cfg;
  cfg.r_max = 1;
  for (auto _ : st) benchmark::DoNotOptimize(simulate(c, basis_state(n, 1), cfg));
}
BENCHMARK(BM_QftBasis)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace
