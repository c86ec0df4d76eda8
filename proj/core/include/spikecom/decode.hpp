#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "spikecom/simulator.hpp"

namespace spikecom {

struct BinaryCodeMatrix {
    int n = 0;
    int bins = 0;
    double bin_width_ms = 0.0;
    double t_origin_ms = 0.0;
    std::vector<std::uint8_t> bits;  // row-major n x bins

    std::span<const std::uint8_t> row(int i) const {
        return {bits.data() + static_cast<std::size_t>(i) * bins, static_cast<std::size_t>(bins)};
    }
    int ones(int i) const;
};

// Bit k of row i is set iff neuron i spiked in
// [t_origin + k*bin_width, t_origin + (k+1)*bin_width).
BinaryCodeMatrix binarize(const SpikeData& spikes, double bin_width_ms, double t_origin_ms = 0.0);

// 1 - (Hamming distance)/length, or 0 when either row never fires.
double hamming_plain(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y);

// Plain similarity scaled by both rows' occupied-bin counts.
double hamming_weighted(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y);

enum class Metric { plain, weighted };

struct ComparisonMatrix {
    int n = 0;
    Metric variant = Metric::plain;
    double bin_width_ms = 0.0;
    std::vector<double> values;  // row-major n x n

    double at(int i, int j) const {
        return values[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)];
    }
};

ComparisonMatrix comparison_matrix(const BinaryCodeMatrix& codes, Metric variant);

// Half-open time window [first, second) in ms.
using Window = std::pair<double, double>;

// counts[i][w] = spikes of neuron i inside window w. Windows must not overlap.
std::vector<std::vector<int>> window_spike_counts(const SpikeData& spikes,
                                                  const std::vector<Window>& windows);

struct BipolarStateTable {
    std::vector<Window> windows;
    std::vector<std::vector<int>> counts;          // [neuron][window]
    std::vector<std::vector<std::int8_t>> states;  // +1 active, -1 quiescent
    double f0 = 0.0;
};

// state = +1 iff count >= f0.
BipolarStateTable bipolar_decode(const std::vector<std::vector<int>>& counts,
                                 const std::vector<Window>& windows, double f0);

struct CommunityStat {
    double mean = 0.0;
    double stddev = 0.0;
    int count = 0;
};

// Per-community average of column `source`, excluding the source's own entry.
std::vector<CommunityStat> mean_similarity(const ComparisonMatrix& matrix,
                                           const std::vector<int>& labels, int source);

struct SweepStat {
    double bin_width_ms = 0.0;
    int source_community = 0;
    int target_community = 0;
    double mean = 0.0;
    double stddev = 0.0;
};

struct SeparabilitySweep {
    std::vector<double> bin_widths_ms;
    std::vector<SweepStat> stats;
    // Per bin width, per source community: min over that community's sources
    // of (own-community mean - max cross-community mean). NaN without sources.
    std::vector<std::vector<double>> community_margin;
    std::vector<double> margin;  // per bin width, min over source communities
};

// Re-binarizes at every width and scores plain-metric separability from the
// given source neurons. guard_min/guard_max (0 = off) only emit warnings.
SeparabilitySweep separability_sweep(const SpikeData& spikes, const std::vector<int>& labels,
                                     const std::vector<double>& bin_widths_ms,
                                     const std::vector<int>& sources, double guard_min_ms = 0.0,
                                     double guard_max_ms = 0.0);

inline constexpr int kUnassigned = -1;

// Nearest-seed classification: community ids are positions in `seeds`. Seeds
// keep their own id; everyone else needs similarity >= theta to be assigned.
std::vector<int> reconstruct_from_seeds(const ComparisonMatrix& matrix,
                                        const std::vector<int>& seeds, double theta);

}  // namespace spikecom
