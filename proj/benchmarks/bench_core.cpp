// Copyright 2026 The tomobell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "tomobell/bell.hpp"
#include "tomobell/hermite.hpp"
#include "tomobell/portrait.hpp"
#include "tomobell/states.hpp"

namespace {

using namespace tomobell;

HermiteParams squeezed_params() {
    const GaussianSpec g = squeezed_example_spec();
    const Vec4R mu = gaussian_shifted_mean(g, {{0.0, -0.12}, {0.0, 0.04}});
    return {gaussian_R(g.dispersion()), gaussian_y(g.dispersion(), mu)};
}

void BM_HermiteLattice(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    const auto precision = state.range(1) ? HermitePrecision::kDoubleDouble : HermitePrecision::kDouble;
    const HermiteParams p = squeezed_params();
    HermiteLattice lattice;
    for (auto _ : state) {
        lattice.reset(p, {n, n, n, n}, 4 * n, precision);
        benchmark::DoNotOptimize(lattice.normalized({n, n, n, n}));
    }
    const double points = static_cast<double>(n + 1) * (n + 1) * (n + 1) * (n + 1);
    state.counters["points/s"] = benchmark::Counter(points, benchmark::Counter::kIsIterationInvariantRate);
}
BENCHMARK(BM_HermiteLattice)
    ->ArgsProduct({{10, 20, 30}, {0, 1}})
    ->ArgNames({"nmax", "extended"})
    ->Unit(benchmark::kMillisecond);

void BM_GaussianTable(benchmark::State &state) {
    const GaussianSource src(gaussian_purity_family(0.9, 0.01));
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(src.table({{0.05, 0.1}, {-0.1, 0.02}}, n));
}
BENCHMARK(BM_GaussianTable)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_GaussianExactPortrait(benchmark::State &state) {
    const GaussianSpec g = gaussian_purity_family(0.9, 0.01);
    const DisplacementPair a{{0.05, 0.1}, {-0.1, 0.02}};
    for (auto _ : state) benchmark::DoNotOptimize(gaussian_portrait_even_odd(g, a));
}
BENCHMARK(BM_GaussianExactPortrait);

void BM_CatPortraitEvenOdd(benchmark::State &state) {
    const double g = static_cast<double>(state.range(0));
    const DisplacementPair a{{0.0, 0.01}, {0.0, 0.01}};
    for (auto _ : state) benchmark::DoNotOptimize(cat_portrait_even_odd({g, g}, a));
}
BENCHMARK(BM_CatPortraitEvenOdd)->Arg(1)->Arg(10)->Arg(50);

void BM_CatTomogram(benchmark::State &state) {
    const CatState s{{0.7, 0.3}, {0.0, -0.4}};
    for (auto _ : state) benchmark::DoNotOptimize(cat_tomogram(s, {3, 2}, {0.2, {0.0, 0.5}}));
}
BENCHMARK(BM_CatTomogram);

void BM_MaximizeCat(benchmark::State &state) {
    const CatSource src({1.0, 1.0});
    MaximizeConfig cfg;
    cfg.starts = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(maximize_bell(src, PartitionScheme::even_odd(), cfg).f);
}
BENCHMARK(BM_MaximizeCat)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
