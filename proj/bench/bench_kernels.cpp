// OpenMP kernels against their serial reference implementations.

#include <benchmark/benchmark.h>

#include "vlcsec/action_table.hpp"
#include "vlcsec/config.hpp"
#include "vlcsec/montecarlo.hpp"

namespace {

using namespace vlcsec;

struct TableFixture {
    LinkModel model;
    ActionSpace space;
};

const TableFixture& table_fixture()
{
    static const TableFixture f = [] {
        const ExperimentConfig cfg = default_config();
        const Scenario sc = build_scenarios(cfg).front();
        const RunConfig rc = make_run_config(cfg, RunMode::adaptive(), 1);
        return TableFixture{LinkModel::from(sc, rc.quadrature, rc.weights, rc.clamp_secrecy),
                            make_action_space(rc, static_cast<int>(sc.luminaires.size()))};
    }();
    return f;
}

void BM_ActionTableSerial(benchmark::State& state)
{
    const auto& f = table_fixture();
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_action_table_serial(f.model, f.space));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(f.space.size()));
}

void BM_ActionTableParallel(benchmark::State& state)
{
    const auto& f = table_fixture();
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_action_table(f.model, f.space));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(f.space.size()));
}

void BM_McBerSerial(benchmark::State& state)
{
    const auto c = build_constellation(16, 1.0);
    const auto n = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(mc_ber_oracle_serial(16, EffectiveGain{1.0}, 0.03, c.avg_symbol_energy, n, 1));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_McBerParallel(benchmark::State& state)
{
    const auto c = build_constellation(16, 1.0);
    const auto n = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(mc_ber_oracle(16, EffectiveGain{1.0}, 0.03, c.avg_symbol_energy, n, 1));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_McEntropySerial(benchmark::State& state)
{
    const GaussianMixture mix{build_constellation(64, 1.0).points, 0.02};
    for (auto _ : state) benchmark::DoNotOptimize(mc_entropy_oracle_serial(mix, 1u << 18, 1));
}

void BM_McEntropyParallel(benchmark::State& state)
{
    const GaussianMixture mix{build_constellation(64, 1.0).points, 0.02};
    for (auto _ : state) benchmark::DoNotOptimize(mc_entropy_oracle(mix, 1u << 18, 1));
}

}  // namespace

BENCHMARK(BM_ActionTableSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ActionTableParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_McBerSerial)->Arg(1 << 17)->Arg(1 << 20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_McBerParallel)->Arg(1 << 17)->Arg(1 << 20)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_McEntropySerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_McEntropyParallel)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
