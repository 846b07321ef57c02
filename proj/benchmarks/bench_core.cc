// Copyright 2026 The hdclone Authors
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

#include "hdclone/cloning.h"
#include "hdclone/mubs.h"
#include "hdclone/qkd.h"
#include "hdclone/random.h"
#include "hdclone/tomography.h"

using namespace hdclone;

static void BM_clone_channel(benchmark::State &state) {
    const int d = static_cast<int>(state.range(0));
    Rng rng(1);
    Ket psi = random_ket(d, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(clone_channel(psi));
    }
}
BENCHMARK(BM_clone_channel)->DenseRange(2, 7);

static void BM_simulate_coincidences(benchmark::State &state) {
    const int d = static_cast<int>(state.range(0));
    Basis basis = computational_basis(d);
    uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_coincidences(basis[0], basis, 100000, seed++, HomModel::ideal()));
    }
    state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(BM_simulate_coincidences)->Arg(2)->Arg(7)->Unit(benchmark::kMillisecond);

static void BM_linear_inversion(benchmark::State &state) {
    const int d = static_cast<int>(state.range(0));
    MubSet set = mub_set(d);
    Rng rng(2);
    auto freqs = exact_probabilities(random_density_matrix(d, rng), set);
    for (auto _ : state) {
        benchmark::DoNotOptimize(linear_inversion(freqs, set));
    }
}
BENCHMARK(BM_linear_inversion)->Arg(3)->Arg(7)->Arg(11);

static void BM_project_to_physical(benchmark::State &state) {
    MubSet set = mub_set(7);
    Operator rho = density_from_ket(gaussian_state());
    Operator raw = linear_inversion(simulate_measurements(rho, set, 10000, 3), set);
    for (auto _ : state) {
        benchmark::DoNotOptimize(project_to_physical(raw));
    }
}
BENCHMARK(BM_project_to_physical);

static void BM_run_bb84(benchmark::State &state) {
    QkdConfig cfg;
    cfg.dim = 7;
    cfg.n_rounds = 100000;
    cfg.eve_present = state.range(0) != 0;
    for (auto _ : state) {
        cfg.seed++;
        benchmark::DoNotOptimize(run_bb84(cfg));
    }
    state.SetItemsProcessed(state.iterations() * cfg.n_rounds);
}
BENCHMARK(BM_run_bb84)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
