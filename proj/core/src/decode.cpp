#include "spikecom/decode.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <numeric>
#include <set>
#include <string>

#include "spikecom/errors.hpp"

namespace spikecom {

int BinaryCodeMatrix::ones(int i) const {
    const auto r = row(i);
    return static_cast<int>(std::count(r.begin(), r.end(), std::uint8_t{1}));
}

BinaryCodeMatrix binarize(const SpikeData& spikes, double bin_width_ms, double t_origin_ms) {
    if (bin_width_ms <= 0.0) {
        throw ParameterError("binarize: bin width must be positive");
    }
    if (t_origin_ms < 0.0) {
        throw ParameterError("binarize: bin origin must be nonnegative");
    }
    if (t_origin_ms >= spikes.duration_ms) {
        throw ParameterError("binarize: bin origin at or beyond the data horizon");
    }
    BinaryCodeMatrix codes;
    codes.n = spikes.n;
    codes.bin_width_ms = bin_width_ms;
    codes.t_origin_ms = t_origin_ms;
    const double span = spikes.duration_ms - t_origin_ms;
    codes.bins = static_cast<int>(std::ceil(span / bin_width_ms - 1e-9));
    if (codes.bins < 1) {
        codes.bins = 1;
    }
    if (codes.bins == 1) {
        std::cerr << "warning: bin width " << bin_width_ms
                  << " ms covers the whole recording; codes collapse to one bin\n";
    }
    codes.bits.assign(static_cast<std::size_t>(codes.n) * codes.bins, 0);
    for (int i = 0; i < spikes.n; ++i) {
        auto* row = codes.bits.data() + static_cast<std::size_t>(i) * codes.bins;
        for (double t : spikes.trains[i]) {
            if (t < t_origin_ms) {
                continue;
            }
            auto k = static_cast<long long>(std::floor((t - t_origin_ms) / bin_width_ms));
            if (k >= codes.bins) {
                k = codes.bins - 1;  // spike exactly on the final boundary
            }
            row[k] = 1;
        }
    }
    return codes;
}

double hamming_plain(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y) {
    if (x.size() != y.size()) {
        throw ParameterError("hamming: rows differ in length");
    }
    if (x.empty()) {
        throw ParameterError("hamming: empty rows");
    }
    long long h = 0;
    long long ones_x = 0;
    long long ones_y = 0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        h += x[k] != y[k];
        ones_x += x[k];
        ones_y += y[k];
    }
    if (ones_x == 0 || ones_y == 0) {
        return 0.0;
    }
    return 1.0 - static_cast<double>(h) / static_cast<double>(x.size());
}

double hamming_weighted(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y) {
    if (x.size() != y.size()) {
        throw ParameterError("hamming: rows differ in length");
    }
    if (x.empty()) {
        throw ParameterError("hamming: empty rows");
    }
    long long h = 0;
    long long ones_x = 0;
    long long ones_y = 0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        h += x[k] != y[k];
        ones_x += x[k];
        ones_y += y[k];
    }
    // The count product is grouped so the result is exactly symmetric in x, y.
    return (1.0 - static_cast<double>(h) / static_cast<double>(x.size())) *
           (static_cast<double>(ones_x) * static_cast<double>(ones_y));
}

ComparisonMatrix comparison_matrix(const BinaryCodeMatrix& codes, Metric variant) {
    ComparisonMatrix m;
    m.n = codes.n;
    m.variant = variant;
    m.bin_width_ms = codes.bin_width_ms;
    m.values.assign(static_cast<std::size_t>(m.n) * m.n, 0.0);
    const auto metric = variant == Metric::plain ? hamming_plain : hamming_weighted;
    for (int i = 0; i < m.n; ++i) {
        for (int j = i; j < m.n; ++j) {
            const double value = metric(codes.row(i), codes.row(j));
            m.values[static_cast<std::size_t>(i) * m.n + j] = value;
            m.values[static_cast<std::size_t>(j) * m.n + i] = value;
        }
    }
    return m;
}

namespace {

void check_windows(const std::vector<Window>& windows) {
    for (const auto& w : windows) {
        if (w.second <= w.first) {
            throw ParameterError("windows: end must exceed start");
        }
    }
    std::vector<Window> sorted = windows;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t k = 1; k < sorted.size(); ++k) {
        if (sorted[k].first < sorted[k - 1].second - 1e-9) {
            throw ParameterError("windows: overlapping windows");
        }
    }
}

}  // namespace

std::vector<std::vector<int>> window_spike_counts(const SpikeData& spikes,
                                                  const std::vector<Window>& windows) {
    check_windows(windows);
    std::vector<std::vector<int>> counts(spikes.n, std::vector<int>(windows.size(), 0));
    for (int i = 0; i < spikes.n; ++i) {
        const auto& train = spikes.trains[i];
        for (std::size_t w = 0; w < windows.size(); ++w) {
            const auto first = std::lower_bound(train.begin(), train.end(), windows[w].first);
            const auto last = std::lower_bound(train.begin(), train.end(), windows[w].second);
            counts[i][w] = static_cast<int>(last - first);
        }
    }
    return counts;
}

BipolarStateTable bipolar_decode(const std::vector<std::vector<int>>& counts,
                                 const std::vector<Window>& windows, double f0) {
    if (f0 <= 0.0) {
        throw ParameterError("bipolar decode: threshold must be positive");
    }
    check_windows(windows);
    for (const auto& row : counts) {
        if (row.size() != windows.size()) {
            throw ParameterError("bipolar decode: counts row size does not match windows");
        }
    }
    BipolarStateTable table;
    table.windows = windows;
    table.counts = counts;
    table.f0 = f0;
    table.states.assign(counts.size(), std::vector<std::int8_t>(windows.size(), -1));
    for (std::size_t i = 0; i < counts.size(); ++i) {
        for (std::size_t w = 0; w < windows.size(); ++w) {
            if (static_cast<double>(counts[i][w]) >= f0) {
                table.states[i][w] = 1;
            }
        }
    }
    return table;
}

std::vector<CommunityStat> mean_similarity(const ComparisonMatrix& matrix,
                                           const std::vector<int>& labels, int source) {
    if (static_cast<int>(labels.size()) != matrix.n) {
        throw ParameterError("mean similarity: label count does not match matrix size");
    }
    if (source < 0 || source >= matrix.n) {
        throw ParameterError("mean similarity: source out of range");
    }
    int k = 0;
    for (int label : labels) {
        if (label < 0) {
            throw ParameterError("mean similarity: negative community label");
        }
        k = std::max(k, label + 1);
    }
    std::vector<CommunityStat> stats(k);
    for (int c = 0; c < k; ++c) {
        double sum = 0.0;
        int count = 0;
        for (int i = 0; i < matrix.n; ++i) {
            if (labels[i] != c || i == source) {
                continue;
            }
            sum += matrix.at(i, source);
            ++count;
        }
        stats[c].count = count;
        if (count == 0) {
            continue;
        }
        stats[c].mean = sum / count;
        double sq = 0.0;
        for (int i = 0; i < matrix.n; ++i) {
            if (labels[i] != c || i == source) {
                continue;
            }
            const double d = matrix.at(i, source) - stats[c].mean;
            sq += d * d;
        }
        stats[c].stddev = std::sqrt(sq / count);
    }
    return stats;
}

SeparabilitySweep separability_sweep(const SpikeData& spikes, const std::vector<int>& labels,
                                     const std::vector<double>& bin_widths_ms,
                                     const std::vector<int>& sources, double guard_min_ms,
                                     double guard_max_ms) {
    if (bin_widths_ms.empty()) {
        throw ParameterError("sweep: no bin widths");
    }
    if (sources.empty()) {
        throw ParameterError("sweep: no source neurons");
    }
    if (static_cast<int>(labels.size()) != spikes.n) {
        throw ParameterError("sweep: label count does not match spike data");
    }
    int k = 0;
    for (int label : labels) {
        k = std::max(k, label + 1);
    }
    for (int j : sources) {
        if (j < 0 || j >= spikes.n) {
            throw ParameterError("sweep: source neuron out of range");
        }
    }

    SeparabilitySweep sweep;
    sweep.bin_widths_ms = bin_widths_ms;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (double dt : bin_widths_ms) {
        if (guard_min_ms > 0.0 && dt <= guard_min_ms) {
            std::cerr << "warning: bin width " << dt << " ms at or below the firing period "
                      << guard_min_ms << " ms\n";
        }
        if (guard_max_ms > 0.0 && dt >= guard_max_ms) {
            std::cerr << "warning: bin width " << dt << " ms at or above the pulse width "
                      << guard_max_ms << " ms\n";
        }
        const BinaryCodeMatrix codes = binarize(spikes, dt);
        const ComparisonMatrix matrix = comparison_matrix(codes, Metric::plain);

        std::vector<double> community_margin(k, nan);
        // Pooled similarity samples per (source community, target community).
        std::vector<std::vector<std::vector<double>>> pooled(
            k, std::vector<std::vector<double>>(k));
        for (int j : sources) {
            const int c = labels[j];
            const auto stats = mean_similarity(matrix, labels, j);
            double own = 0.0;
            double cross = -std::numeric_limits<double>::infinity();
            for (int m = 0; m < k; ++m) {
                if (stats[m].count == 0) {
                    continue;
                }
                if (m == c) {
                    own = stats[m].mean;
                } else {
                    cross = std::max(cross, stats[m].mean);
                }
            }
            const double margin = own - cross;
            if (std::isnan(community_margin[c]) || margin < community_margin[c]) {
                community_margin[c] = margin;
            }
            for (int i = 0; i < matrix.n; ++i) {
                if (i != j) {
                    pooled[c][labels[i]].push_back(matrix.at(i, j));
                }
            }
        }

        for (int c = 0; c < k; ++c) {
            for (int m = 0; m < k; ++m) {
                const auto& samples = pooled[c][m];
                if (samples.empty()) {
                    continue;
                }
                const double mean =
                    std::accumulate(samples.begin(), samples.end(), 0.0) / samples.size();
                double sq = 0.0;
                for (double value : samples) {
                    sq += (value - mean) * (value - mean);
                }
                sweep.stats.push_back({dt, c, m, mean, std::sqrt(sq / samples.size())});
            }
        }

        double global = std::numeric_limits<double>::infinity();
        bool any = false;
        for (int c = 0; c < k; ++c) {
            if (!std::isnan(community_margin[c])) {
                global = std::min(global, community_margin[c]);
                any = true;
            }
        }
        sweep.community_margin.push_back(std::move(community_margin));
        sweep.margin.push_back(any ? global : nan);
    }
    return sweep;
}

std::vector<int> reconstruct_from_seeds(const ComparisonMatrix& matrix,
                                        const std::vector<int>& seeds, double theta) {
    if (seeds.empty()) {
        throw ParameterError("reconstruct: no seeds");
    }
    std::set<int> unique(seeds.begin(), seeds.end());
    if (unique.size() != seeds.size()) {
        throw ParameterError("reconstruct: duplicate seeds");
    }
    for (int s : seeds) {
        if (s < 0 || s >= matrix.n) {
            throw ParameterError("reconstruct: seed out of range");
        }
    }
    std::vector<int> predicted(matrix.n, kUnassigned);
    for (std::size_t s = 0; s < seeds.size(); ++s) {
        predicted[seeds[s]] = static_cast<int>(s);
    }
    for (int i = 0; i < matrix.n; ++i) {
        if (predicted[i] != kUnassigned) {
            continue;
        }
        int best = 0;
        double best_value = matrix.at(i, seeds[0]);
        for (std::size_t s = 1; s < seeds.size(); ++s) {
            const double value = matrix.at(i, seeds[s]);
            if (value > best_value) {
                best = static_cast<int>(s);
                best_value = value;
            }
        }
        if (best_value >= theta) {
            predicted[i] = best;
        }
    }
    return predicted;
}

}  // namespace spikecom
