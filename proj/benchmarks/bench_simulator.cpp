#include <benchmark/benchmark.h>

#include "spikecom/calibration.hpp"
#include "spikecom/graph.hpp"
#include "spikecom/network.hpp"
#include "spikecom/simulator.hpp"
#include "spikecom/stimulus.hpp"

namespace {

using namespace spikecom;

LabeledGraph benchmark_graph(int n) {
    PartitionSpec spec;
    spec.n = n;
    spec.num_communities = 4;
    // Degrees scale with n so small sizes stay below edge probability 1;
    // n = 128 reproduces the standard 16 / 2 split.
    spec.avg_degree = n / 8.0;
    spec.z_out = n / 64.0;
    spec.seed = 11;
    return generate_planted_partition(spec);
}

DriveParams standard_drive(const NeuronParams& p) {
    DriveParams d;
    d.a_max = amax_for_target_isi(p, 21.0);
    return d;
}

// One driven community on the full benchmark network.
void BM_SimulateCommunity(benchmark::State& state) {
    const auto g = benchmark_graph(static_cast<int>(state.range(0)));
    const NeuronParams params;
    const auto net = map_graph_to_network(g, params, {});
    const auto schedule = community_ordered_schedule(g, {0}, standard_drive(params));
    SimulationConfig cfg;
    for (auto _ : state) {
        auto spikes = run_simulation(net, schedule, cfg);
        benchmark::DoNotOptimize(spikes.total_spikes());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long long>(g.n) *
                            static_cast<long long>(schedule.total_duration_ms / cfg.dt_ms));
}

// Isolated neuron under one pulse; the per-step floor of the engine.
void BM_SimulateIsolated(benchmark::State& state) {
    LabeledGraph g;
    g.n = 1;
    g.labels = {0};
    const NeuronParams params;
    const auto net = map_graph_to_network(g, params, {});
    const auto schedule = community_ordered_schedule(g, {0}, standard_drive(params));
    SimulationConfig cfg;
    for (auto _ : state) {
        auto spikes = run_simulation(net, schedule, cfg);
        benchmark::DoNotOptimize(spikes.total_spikes());
    }
}

}  // namespace

BENCHMARK(BM_SimulateCommunity)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SimulateIsolated)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
