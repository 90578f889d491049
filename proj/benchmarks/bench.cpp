// Copyright 2026 The lotgap Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "lotgap/harness.hpp"
#include "lotgap/opt.hpp"

using namespace lotgap;

namespace {

TypeSpace<Rat> iid_items(int m, int support) {
    SplitMix64 rng(424242);
    std::vector<std::vector<DiscreteDist<Rat>>> d(1);
    for (int j = 0; j < m; ++j) d[0].push_back(random_dist(rng, support));
    return product_type_space<Rat>(d);
}

void BM_MenuEval(benchmark::State& state) {
    auto ts = iid_items(3, 3);
    auto mlp = optimal_menu_lp(ts);
    for (auto _ : state) benchmark::DoNotOptimize(menu_revenue(mlp.menu, ts));
}
BENCHMARK(BM_MenuEval);

void BM_MenuLP(benchmark::State& state) {
    auto ts = iid_items(static_cast<int>(state.range(0)), 3);
    for (auto _ : state) benchmark::DoNotOptimize(optimal_menu_lp(ts).revenue);
}
BENCHMARK(BM_MenuLP)->Arg(2)->Arg(3);

void BM_MaxWeightMatching(benchmark::State& state) {
    auto fs = FeasibilitySystem::matching(4, 4, {1, 1, 2, 1});
    SplitMix64 rng(7);
    std::vector<std::vector<Rat>> weights(64, std::vector<Rat>(16));
    for (auto& w : weights)
        for (auto& x : w) x = Rat(static_cast<long>(rng.below(100)), 7);
    std::size_t k = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(fs.max_weight_feasible(weights[k]));
        k = (k + 1) % weights.size();
    }
}
BENCHMARK(BM_MaxWeightMatching);

void BM_MyersonCopies(benchmark::State& state) {
    auto ts = iid_items(3, 3);
    auto fs = FeasibilitySystem::matching(1, 3, {1, 1, 1});
    for (auto _ : state) {
        auto copies = build_copies(ts, fs);
        benchmark::DoNotOptimize(myerson(copies.ts, copies.fs).revenue);
    }
}
BENCHMARK(BM_MyersonCopies);

void BM_PricingExact(benchmark::State& state) {
    auto ts = iid_items(2, 3);
    for (auto _ : state) benchmark::DoNotOptimize(optimal_pricing_exact(ts).revenue);
}
BENCHMARK(BM_PricingExact);

}  // namespace

BENCHMARK_MAIN();
