// Copyright 2026 The QNP Authors
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

#include "qnp/algorithms.hpp"
#include "qnp/calibration.hpp"
#include "qnp/rng.hpp"
#include "qnp/scoring.hpp"
#include "qnp/simulator.hpp"
#include "qnp/statistics.hpp"
#include "qnp/transpiler.hpp"

namespace {

using namespace qnp;

ComputerDescriptor heavy_hex_like() {
  return make_computer("h7", 7, {{0, 1}, {1, 2}, {1, 3}, {3, 5}, {4, 5}, {5, 6}});
}

void BM_CompileBatch(benchmark::State& state) {
  const auto device = heavy_hex_like();
  const auto circuit = build_algorithm("qft", static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(compile_batch({circuit, device, 60, 1}));
  }
  state.SetItemsProcessed(state.iterations() * 60);
}
BENCHMARK(BM_CompileBatch)->Arg(3)->Arg(5)->Arg(7);

void BM_RunNoisy(benchmark::State& state) {
  const auto device = heavy_hex_like();
  const auto snapshot = generate_synthetic(device, 1, 1, 0.0).latest();
  const auto circuit = compile_once(build_algorithm("ghz", static_cast<int>(state.range(0))), device, 3);
  const auto shots = static_cast<std::uint64_t>(state.range(1));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_noisy(circuit, snapshot, shots, ++seed));
  }
  state.SetItemsProcessed(state.iterations() * state.range(1));
}
BENCHMARK(BM_RunNoisy)->Args({3, 1000})->Args({7, 1000})->Args({3, 20000});

void BM_Kde(benchmark::State& state) {
  std::vector<double> samples;
  Rng rng(5);
  for (int i = 0; i < state.range(0); ++i) samples.push_back(rng.uniform(0.001, 0.1));
  const KdeInput input = default_kde_input(samples);
  for (auto _ : state) benchmark::DoNotOptimize(kde(input));
}
BENCHMARK(BM_Kde)->Arg(6)->Arg(50)->Arg(500);

void BM_ScoreBatch(benchmark::State& state) {
  const auto device = heavy_hex_like();
  const auto snapshot = generate_synthetic(device, 1, 1, 0.0).latest();
  const auto batch = compile_batch({build_algorithm("qft", 5), device, 500, 2});
  for (auto _ : state) {
    std::vector<ScoreReport> reports;
    reports.reserve(batch.circuits.size());
    for (const auto& c : batch.circuits) reports.push_back(score_circuit(c, snapshot));
    benchmark::DoNotOptimize(sort_and_filter(summarize_batch(std::move(reports)), SortKey::score, ScoreAxis::gate));
  }
}
BENCHMARK(BM_ScoreBatch);

}  // namespace

BENCHMARK_MAIN();
