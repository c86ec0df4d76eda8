#include <benchmark/benchmark.h>

#include <random>

#include "spikecom/decode.hpp"
#include "spikecom/random.hpp"

namespace {

using namespace spikecom;

// Poisson-ish random trains with roughly the benchmark's spike density.
SpikeData synthetic_spikes(int n, double duration_ms, double rate_per_ms) {
    std::mt19937_64 rng(99);
    SpikeData spikes;
    spikes.n = n;
    spikes.duration_ms = duration_ms;
    spikes.trains.resize(n);
    for (auto& train : spikes.trains) {
        double t = 0.0;
        while (true) {
            t += -std::log(1.0 - uniform_double(rng)) / rate_per_ms;
            if (t >= duration_ms) {
                break;
            }
            train.push_back(t);
        }
    }
    return spikes;
}

void BM_Binarize(benchmark::State& state) {
    const auto spikes = synthetic_spikes(128, 98000.0, 0.005);
    const double bin = static_cast<double>(state.range(0));
    for (auto _ : state) {
        auto codes = binarize(spikes, bin);
        benchmark::DoNotOptimize(codes.bits.data());
    }
}

void BM_ComparisonMatrix(benchmark::State& state) {
    const auto spikes = synthetic_spikes(128, 98000.0, 0.005);
    const auto codes = binarize(spikes, static_cast<double>(state.range(0)));
    for (auto _ : state) {
        auto matrix = comparison_matrix(codes, Metric::plain);
        benchmark::DoNotOptimize(matrix.values.data());
    }
    state.SetItemsProcessed(state.iterations() * 128 * 128);
}

void BM_SeparabilitySweep(benchmark::State& state) {
    const auto spikes = synthetic_spikes(128, 98000.0, 0.005);
    std::vector<int> labels(128);
    for (int i = 0; i < 128; ++i) {
        labels[i] = i / 32;
    }
    const std::vector<int> sources = {0, 32, 64, 96};
    for (auto _ : state) {
        auto sweep = separability_sweep(spikes, labels, {30.0, 400.0, 1600.0}, sources);
        benchmark::DoNotOptimize(sweep.margin.data());
    }
}

}  // namespace

BENCHMARK(BM_Binarize)->Arg(30)->Arg(8000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ComparisonMatrix)->Arg(30)->Arg(8000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SeparabilitySweep)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
