#include <benchmark/benchmark.h>

#include "hetlab/chaos_map.hpp"
#include "hetlab/coupled_sim.hpp"
#include "hetlab/innovations.hpp"
#include "hetlab/stability.hpp"

namespace {

hetlab::SimConfig egarch_config(std::size_t steps) {
    hetlab::SimConfig cfg;
    cfg.model = hetlab::EgarchParams{0.1, 0.25, 0.3, 0.1};
    cfg.dist = hetlab::InnovationDist::standard_normal();
    cfg.n_steps = steps;
    cfg.burn_in = 1000;
    cfg.seed = 42;
    return cfg;
}

void BM_SimulateCoupledEgarch(benchmark::State& state) {
    const auto cfg = egarch_config(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto states = hetlab::simulate_coupled(cfg);
        benchmark::DoNotOptimize(states.back().sigma2);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateCoupledEgarch)->Arg(1 << 14)->Arg(1 << 17);

void BM_SimulateCoordsEgarch(benchmark::State& state) {
    const auto cfg = egarch_config(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto states = hetlab::simulate_coupled_coords(cfg);
        benchmark::DoNotOptimize(states.back().d_or_zhat);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateCoordsEgarch)->Arg(1 << 14)->Arg(1 << 17);

void BM_LambdaClosedForm(benchmark::State& state) {
    const hetlab::EgarchParams model{0.1, 0.25, 5.4, 0.0};
    const auto dist = hetlab::InnovationDist::standard_normal();
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        auto est = hetlab::lambda_egarch_closed(model, dist, n, 7, 1);
        benchmark::DoNotOptimize(est.value);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LambdaClosedForm)->Arg(1 << 16)->Arg(1 << 20);

void BM_BifurcationScan(benchmark::State& state) {
    for (auto _ : state) {
        auto scan = hetlab::bifurcation_scan(hetlab::MapVariant::Derived, 0.0, 0.5,
                                             0.5, 4.0,
                                             static_cast<std::size_t>(state.range(0)),
                                             0.1, 2000, 256, 1);
        benchmark::DoNotOptimize(scan.cells.size());
    }
}
BENCHMARK(BM_BifurcationScan)->Arg(64)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
