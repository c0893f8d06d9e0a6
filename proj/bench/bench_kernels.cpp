// Copyright 2026 The sl2sum Authors
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

// Serial reference traversal against the OpenMP kernel, and the two
// Mordell-Tornheim modes.

#include <benchmark/benchmark.h>

#include "sl2sum/series.hpp"
#include "sl2sum/support.hpp"
#include "sl2sum/tornheim.hpp"

namespace {

using namespace sl2sum;

void run_sum(benchmark::State& state, const char* curve, double s,
             series::Engine engine) {
  const support::Curve c = support::builtin(curve);
  series::SumControls ctl;
  ctl.s = s;
  ctl.prune_epsilon = 1e-8;
  ctl.engine = engine;
  if (engine == series::Engine::parallel) ctl.threads = int(state.range(0));
  std::uint64_t nodes = 0;
  for (auto _ : state) {
    const auto r = series::sum_power(c, ctl);
    benchmark::DoNotOptimize(r.value);
    nodes = r.nodes_used;
  }
  state.counters["nodes"] = double(nodes);
  state.counters["nodes/s"] = benchmark::Counter(
      double(nodes) * double(state.iterations()), benchmark::Counter::kIsRate);
}

void BM_CircleSerial(benchmark::State& s) {
  run_sum(s, "circle", 2, series::Engine::serial);
}
void BM_CircleParallel(benchmark::State& s) {
  run_sum(s, "circle", 2, series::Engine::parallel);
}
void BM_CycloidSerial(benchmark::State& s) {
  run_sum(s, "cycloid", 2, series::Engine::serial);
}
void BM_CycloidParallel(benchmark::State& s) {
  run_sum(s, "cycloid", 2, series::Engine::parallel);
}

void BM_Tornheim(benchmark::State& state, tornheim::Mode mode) {
  tornheim::TornheimQuery q;
  q.s = 2;
  q.mode = mode;
  q.cutoff = 2000;
  for (auto _ : state) benchmark::DoNotOptimize(tornheim::tornheim_coprime(q).value);
}

}  // namespace

BENCHMARK(BM_CircleSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_CircleParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_CycloidSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_CycloidParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(BM_Tornheim, zeta, tornheim::Mode::zeta)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(BM_Tornheim, direct, tornheim::Mode::direct)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
