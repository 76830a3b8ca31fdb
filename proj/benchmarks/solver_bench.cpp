// Copyright 2026 The SAG Authors.
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

#include "sag/datagen.hpp"
#include "sag/defaults.hpp"
#include "sag/engine.hpp"
#include "sag/equilibrium.hpp"

namespace {

using namespace sag;

struct State {
  PayoffStructure payoffs = defaults::reference_payoffs();
  RateProfile profile =
      fit(generate_cycles(defaults::reference_arrivals(), defaults::kHistoryDays, 1), 7);
  FutureEstimate midday = estimate(profile, payoffs, 12 * 3600, nullptr);
};

const State& state() {
  static const State s;
  return s;
}

void BM_SolveOssp(benchmark::State& bs) {
  const auto& s = state();
  const double budget = static_cast<double>(bs.range(0));
  for (auto _ : bs) benchmark::DoNotOptimize(solve_ossp(s.payoffs, s.midday, budget));
}
BENCHMARK(BM_SolveOssp)->Arg(0)->Arg(10)->Arg(50)->Unit(benchmark::kMicrosecond);

void BM_SolveOnlineSse(benchmark::State& bs) {
  const auto& s = state();
  for (auto _ : bs) benchmark::DoNotOptimize(solve_online_sse(s.payoffs, s.midday, 49.5));
}
BENCHMARK(BM_SolveOnlineSse)->Unit(benchmark::kMicrosecond);

void BM_CoverageCoefficient(benchmark::State& bs) {
  const double lambda = static_cast<double>(bs.range(0));
  for (auto _ : bs) benchmark::DoNotOptimize(coverage_coefficient(lambda, 1.0));
}
BENCHMARK(BM_CoverageCoefficient)->Arg(2)->Arg(200);

void BM_ProcessAlert(benchmark::State& bs) {
  const auto& s = state();
  CycleState cycle = start_cycle(50.0, 0.01, CounterRng(1));
  for (auto _ : bs) {
    CycleState copy = cycle;
    benchmark::DoNotOptimize(process_alert(copy, {12 * 3600, 0}, s.payoffs, s.profile));
  }
}
BENCHMARK(BM_ProcessAlert)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
