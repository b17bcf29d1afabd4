/*
 * Copyright (C) 2026 The sirctl Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include <vector>

#include <benchmark/benchmark.h>

#include "sirctl/sirctl.hpp"

using namespace sirctl;

namespace {

ModelParams scenario(int n_steps)
{
    ModelParams p;
    p.n_steps = n_steps;
    return p;
}

void BM_IntegrateCoupled(benchmark::State& state)
{
    const ModelParams p = scenario(static_cast<int>(state.range(0)));
    const RunningCost cost = RunningCost::from(p);
    for (auto _ : state)
        benchmark::DoNotOptimize(integrate_coupled({-0.07, -1.86}, cost, p));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_IntegrateCoupled)->Arg(500)->Arg(2000)->Arg(8000);

void BM_SolveShooting(benchmark::State& state)
{
    const ModelParams p = scenario(static_cast<int>(state.range(0)));
    const RunningCost cost = RunningCost::from(p);
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_shooting(cost, p));
}
BENCHMARK(BM_SolveShooting)->Arg(2000)->Arg(4000)->Unit(benchmark::kMillisecond);

void BM_SolveSweep(benchmark::State& state)
{
    const ModelParams p = scenario(static_cast<int>(state.range(0)));
    const RunningCost cost = RunningCost::from(p);
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_sweep(cost, p));
}
BENCHMARK(BM_SolveSweep)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_BruteForce(benchmark::State& state)
{
    const ModelParams p = scenario(2000);
    const RunningCost cost = RunningCost::from(p);
    const int intervals = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(brute_force_best(cost, p, intervals, 4));
}
BENCHMARK(BM_BruteForce)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
