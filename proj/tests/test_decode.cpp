#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "spikecom/decode.hpp"
#include "spikecom/errors.hpp"
#include "spikecom/random.hpp"

namespace spikecom {
namespace {

using Bits = std::vector<std::uint8_t>;

SpikeData make_spikes(std::vector<std::vector<double>> trains, double duration) {
    SpikeData s;
    s.n = static_cast<int>(trains.size());
    s.trains = std::move(trains);
    s.duration_ms = duration;
    return s;
}

SpikeData random_spikes(std::mt19937_64& rng, int n, double duration, double rate_per_ms) {
    SpikeData s;
    s.n = n;
    s.duration_ms = duration;
    s.trains.resize(n);
    for (auto& train : s.trains) {
        double t = 0.0;
        while (true) {
            t += -std::log(1.0 - uniform_double(rng)) / rate_per_ms;
            if (t > duration) {
                break;
            }
            train.push_back(t);
        }
    }
    return s;
}

Bits random_bits(std::mt19937_64& rng, int length, double p) {
    Bits bits(length);
    for (auto& b : bits) {
        b = uniform_double(rng) < p ? 1 : 0;
    }
    return bits;
}

// Naive re-implementations used as oracles.
double oracle_plain(const Bits& x, const Bits& y) {
    bool fx = false;
    bool fy = false;
    int h = 0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        fx = fx || x[k] != 0;
        fy = fy || y[k] != 0;
        if ((x[k] != 0) != (y[k] != 0)) {
            ++h;
        }
    }
    if (!fx || !fy) {
        return 0.0;
    }
    return 1.0 - static_cast<double>(h) / static_cast<double>(x.size());
}

double oracle_weighted(const Bits& x, const Bits& y) {
    int h = 0;
    int ox = 0;
    int oy = 0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        h += (x[k] != 0) != (y[k] != 0);
        ox += x[k] != 0;
        oy += y[k] != 0;
    }
    return (1.0 - static_cast<double>(h) / static_cast<double>(x.size())) *
           (static_cast<double>(ox) * static_cast<double>(oy));
}

TEST(Decode, BinarizeClosedCases) {
    const SpikeData s = make_spikes({{5.0, 10.0}, {}}, 16.0);
    const BinaryCodeMatrix codes = binarize(s, 8.0);
    EXPECT_EQ(codes.bins, 2);
    EXPECT_EQ(codes.row(0)[0], 1);
    EXPECT_EQ(codes.row(0)[1], 1);
    EXPECT_EQ(codes.row(1)[0], 0);
    EXPECT_EQ(codes.row(1)[1], 0);
    EXPECT_EQ(codes.ones(0), 2);
    EXPECT_EQ(codes.ones(1), 0);
}

TEST(Decode, BinarizeBoundaryConventions) {
    // A spike exactly on a bin edge belongs to the later bin; a spike on the
    // final edge stays in the last bin.
    const SpikeData s = make_spikes({{8.0, 16.0}}, 16.0);
    const BinaryCodeMatrix codes = binarize(s, 8.0);
    EXPECT_EQ(codes.row(0)[0], 0);
    EXPECT_EQ(codes.row(0)[1], 1);

    // Ragged horizon: 20 ms at 8 ms bins still yields ceil coverage.
    const SpikeData r = make_spikes({{19.0}}, 20.0);
    EXPECT_EQ(binarize(r, 8.0).bins, 3);
}

TEST(Decode, BinarizeOriginSkipsEarlySpikes) {
    const SpikeData s = make_spikes({{1.0, 11.0}}, 21.0);
    const BinaryCodeMatrix codes = binarize(s, 10.0, 10.0);
    EXPECT_EQ(codes.bins, 2);
    EXPECT_EQ(codes.ones(0), 1);  // the 1 ms spike predates the origin
    EXPECT_EQ(codes.row(0)[0], 1);
}

TEST(Decode, BinarizeParameterErrors) {
    const SpikeData s = make_spikes({{1.0}}, 10.0);
    EXPECT_THROW(binarize(s, 0.0), ParameterError);
    EXPECT_THROW(binarize(s, 5.0, -1.0), ParameterError);
    EXPECT_THROW(binarize(s, 5.0, 10.0), ParameterError);
    EXPECT_THROW(binarize(s, 5.0, 12.0), ParameterError);
    // Oversized bin collapses to a single bin with a warning, not an error.
    testing::internal::CaptureStderr();
    const BinaryCodeMatrix one = binarize(s, 50.0);
    EXPECT_NE(testing::internal::GetCapturedStderr().find("one bin"), std::string::npos);
    EXPECT_EQ(one.bins, 1);
}

TEST(Decode, BinarizeCoarseningConsistency) {
    // OR of adjacent bin pairs at width dt equals binarize at 2*dt.
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const SpikeData s = random_spikes(rng, 4, 64.0, 0.05 + 0.2 * uniform_double(rng));
        const BinaryCodeMatrix fine = binarize(s, 4.0);
        const BinaryCodeMatrix coarse = binarize(s, 8.0);
        ASSERT_EQ(fine.bins, 16);
        ASSERT_EQ(coarse.bins, 8);
        for (int i = 0; i < s.n; ++i) {
            EXPECT_LE(fine.ones(i), static_cast<int>(s.trains[i].size()));
            for (int k = 0; k < coarse.bins; ++k) {
                const std::uint8_t paired = fine.row(i)[2 * k] | fine.row(i)[2 * k + 1];
                EXPECT_EQ(coarse.row(i)[k], paired);
            }
        }
    }
}

TEST(Decode, HammingPlainClosedCases) {
    const Bits a{1, 0, 1, 0};
    const Bits b{1, 1, 1, 1};
    const Bits zero{0, 0, 0, 0};
    EXPECT_DOUBLE_EQ(hamming_plain(a, a), 1.0);
    EXPECT_DOUBLE_EQ(hamming_plain(a, b), 0.5);
    EXPECT_DOUBLE_EQ(hamming_plain(zero, b), 0.0);
    EXPECT_DOUBLE_EQ(hamming_plain(b, zero), 0.0);
    EXPECT_DOUBLE_EQ(hamming_plain(zero, zero), 0.0);
    const Bits shorter{1, 0};
    EXPECT_THROW(hamming_plain(a, shorter), ParameterError);
    EXPECT_THROW(hamming_plain(Bits{}, Bits{}), ParameterError);
}

TEST(Decode, HammingWeightedClosedCases) {
    const Bits a{1, 1, 0, 0};
    const Bits b{1, 0, 1, 0};
    EXPECT_DOUBLE_EQ(hamming_weighted(a, b), 2.0);
    EXPECT_DOUBLE_EQ(hamming_weighted(a, Bits{0, 0, 0, 0}), 0.0);
    const Bits k3{1, 1, 1, 0};
    EXPECT_DOUBLE_EQ(hamming_weighted(k3, k3), 9.0);
    EXPECT_THROW(hamming_weighted(a, Bits{1}), ParameterError);
}

TEST(Decode, MetricsMatchOraclesExactly) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 1000; ++trial) {
        const int length = 1 + static_cast<int>(uniform_index(rng, 64));
        const Bits x = random_bits(rng, length, uniform_double(rng));
        const Bits y = random_bits(rng, length, uniform_double(rng));
        EXPECT_EQ(hamming_plain(x, y), oracle_plain(x, y));
        EXPECT_EQ(hamming_weighted(x, y), oracle_weighted(x, y));
        // Symmetry on the same draw.
        EXPECT_EQ(hamming_plain(x, y), hamming_plain(y, x));
        EXPECT_EQ(hamming_weighted(x, y), hamming_weighted(y, x));
    }
}

TEST(Decode, ComparisonMatrixIdenticalRows) {
    SpikeData s = make_spikes({{1.0}, {1.0}, {1.0}}, 8.0);
    const ComparisonMatrix m = comparison_matrix(binarize(s, 2.0), Metric::plain);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            EXPECT_DOUBLE_EQ(m.at(i, j), 1.0);
        }
    }
}

TEST(Decode, ComparisonMatrixMatchesPairwiseOracle) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + static_cast<int>(uniform_index(rng, 15));
        const SpikeData s = random_spikes(rng, n, 48.0, 0.02 + 0.2 * uniform_double(rng));
        const BinaryCodeMatrix codes = binarize(s, 4.0);
        for (Metric variant : {Metric::plain, Metric::weighted}) {
            const ComparisonMatrix m = comparison_matrix(codes, variant);
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    const Bits x(codes.row(i).begin(), codes.row(i).end());
                    const Bits y(codes.row(j).begin(), codes.row(j).end());
                    const double expected =
                        variant == Metric::plain ? oracle_plain(x, y) : oracle_weighted(x, y);
                    EXPECT_EQ(m.at(i, j), expected);
                    EXPECT_EQ(m.at(i, j), m.at(j, i));
                    if (variant == Metric::plain) {
                        EXPECT_GE(m.at(i, j), 0.0);
                        EXPECT_LE(m.at(i, j), 1.0);
                    } else {
                        EXPECT_GE(m.at(i, j), 0.0);
                    }
                }
            }
        }
    }
}

TEST(Decode, WindowCountsClosedCases) {
    const SpikeData s = make_spikes({{1.0, 2.0, 3.0}, {}}, 20.0);
    const auto counts = window_spike_counts(s, {{0.0, 10.0}});
    EXPECT_EQ(counts[0][0], 3);
    EXPECT_EQ(counts[1][0], 0);

    // Half-open windows: a spike on the boundary goes to the later window.
    const SpikeData edge = make_spikes({{5.0}}, 20.0);
    const auto split = window_spike_counts(edge, {{0.0, 5.0}, {5.0, 10.0}});
    EXPECT_EQ(split[0][0], 0);
    EXPECT_EQ(split[0][1], 1);
}

TEST(Decode, WindowCountsConserveSpikes) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        const SpikeData s = random_spikes(rng, 3, 60.0, 0.1);
        const std::vector<Window> tiling{{0.0, 20.0}, {20.0, 40.0}, {40.0, 61.0}};
        const auto counts = window_spike_counts(s, tiling);
        for (int i = 0; i < s.n; ++i) {
            int total = 0;
            for (int c : counts[i]) {
                total += c;
            }
            EXPECT_EQ(total, static_cast<int>(s.trains[i].size()));
        }
    }
}

TEST(Decode, WindowValidation) {
    const SpikeData s = make_spikes({{1.0}}, 20.0);
    EXPECT_THROW(window_spike_counts(s, {{5.0, 5.0}}), ParameterError);
    EXPECT_THROW(window_spike_counts(s, {{0.0, 6.0}, {5.0, 10.0}}), ParameterError);
    // Unsorted but disjoint windows are fine and keep their positions.
    const SpikeData two = make_spikes({{1.0, 12.0}}, 20.0);
    const auto counts = window_spike_counts(two, {{10.0, 20.0}, {0.0, 10.0}});
    EXPECT_EQ(counts[0][0], 1);
    EXPECT_EQ(counts[0][1], 1);
}

TEST(Decode, BipolarDecodeThresholdRule) {
    const std::vector<Window> windows{{0.0, 10.0}, {10.0, 20.0}};
    const std::vector<std::vector<int>> counts{{55, 54}, {0, 200}};
    const BipolarStateTable table = bipolar_decode(counts, windows, 55.0);
    EXPECT_EQ(table.states[0][0], 1);   // count == f0 is active
    EXPECT_EQ(table.states[0][1], -1);
    EXPECT_EQ(table.states[1][0], -1);
    EXPECT_EQ(table.states[1][1], 1);

    const BipolarStateTable quiet =
        bipolar_decode({{0, 0}, {0, 0}}, windows, 55.0);
    for (const auto& row : quiet.states) {
        for (auto state : row) {
            EXPECT_EQ(state, -1);
        }
    }

    EXPECT_THROW(bipolar_decode(counts, windows, 0.0), ParameterError);
    EXPECT_THROW(bipolar_decode({{1}}, windows, 5.0), ParameterError);
}

TEST(Decode, BipolarMonotonicInThreshold) {
    std::mt19937_64 rng(19);
    const std::vector<Window> windows{{0.0, 10.0}, {10.0, 20.0}, {20.0, 30.0}};
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::vector<int>> counts(4, std::vector<int>(3));
        for (auto& row : counts) {
            for (auto& c : row) {
                c = static_cast<int>(uniform_index(rng, 100));
            }
        }
        const double lo = 1.0 + static_cast<double>(uniform_index(rng, 50));
        const double hi = lo + 1.0 + static_cast<double>(uniform_index(rng, 50));
        const BipolarStateTable a = bipolar_decode(counts, windows, lo);
        const BipolarStateTable b = bipolar_decode(counts, windows, hi);
        for (std::size_t i = 0; i < counts.size(); ++i) {
            for (std::size_t w = 0; w < windows.size(); ++w) {
                // Raising the threshold can only deactivate.
                EXPECT_LE(b.states[i][w], a.states[i][w]);
            }
        }
    }
}

TEST(Decode, MeanSimilarityIdenticalRows) {
    const SpikeData s = make_spikes({{1.0}, {1.0}, {1.0}, {1.0}}, 8.0);
    const ComparisonMatrix m = comparison_matrix(binarize(s, 2.0), Metric::plain);
    const auto stats = mean_similarity(m, {0, 0, 1, 1}, 0);
    ASSERT_EQ(stats.size(), 2u);
    EXPECT_DOUBLE_EQ(stats[0].mean, 1.0);
    EXPECT_DOUBLE_EQ(stats[1].mean, 1.0);
    EXPECT_EQ(stats[0].count, 1);  // the source itself is excluded
    EXPECT_EQ(stats[1].count, 2);
}

TEST(Decode, MeanSimilarityMatchesOracle) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 3 + static_cast<int>(uniform_index(rng, 14));
        const int k = 1 + static_cast<int>(uniform_index(rng, 4));
        ComparisonMatrix m;
        m.n = n;
        m.values.assign(static_cast<std::size_t>(n) * n, 0.0);
        std::vector<int> labels(n);
        labels[0] = k - 1;  // keep ids contiguous in expectation
        for (int i = 0; i < n; ++i) {
            if (i > 0) {
                labels[i] = static_cast<int>(uniform_index(rng, k));
            }
            for (int j = i; j < n; ++j) {
                const double value = uniform_double(rng);
                m.values[static_cast<std::size_t>(i) * n + j] = value;
                m.values[static_cast<std::size_t>(j) * n + i] = value;
            }
        }
        const int source = static_cast<int>(uniform_index(rng, n));
        const auto stats = mean_similarity(m, labels, source);
        for (int c = 0; c < static_cast<int>(stats.size()); ++c) {
            std::vector<double> values;
            for (int i = 0; i < n; ++i) {
                if (labels[i] == c && i != source) {
                    values.push_back(m.at(i, source));
                }
            }
            EXPECT_EQ(stats[c].count, static_cast<int>(values.size()));
            if (values.empty()) {
                EXPECT_EQ(stats[c].mean, 0.0);
                continue;
            }
            double sum = 0.0;
            for (double v : values) {
                sum += v;
            }
            const double mean = sum / static_cast<int>(values.size());
            double sq = 0.0;
            for (double v : values) {
                sq += (v - mean) * (v - mean);
            }
            EXPECT_EQ(stats[c].mean, mean);
            EXPECT_EQ(stats[c].stddev, std::sqrt(sq / static_cast<int>(values.size())));
        }
    }
}

TEST(Decode, MeanSimilarityRelabelEquivariance) {
    std::mt19937_64 rng(29);
    const int n = 12;
    ComparisonMatrix m;
    m.n = n;
    m.values.assign(n * n, 0.0);
    std::vector<int> labels(n);
    for (int i = 0; i < n; ++i) {
        labels[i] = i % 3;
        for (int j = i; j < n; ++j) {
            const double value = uniform_double(rng);
            m.values[static_cast<std::size_t>(i) * n + j] = value;
            m.values[static_cast<std::size_t>(j) * n + i] = value;
        }
    }
    const std::vector<int> perm{2, 0, 1};
    std::vector<int> relabelled(n);
    for (int i = 0; i < n; ++i) {
        relabelled[i] = perm[labels[i]];
    }
    const auto base = mean_similarity(m, labels, 5);
    const auto moved = mean_similarity(m, relabelled, 5);
    for (int c = 0; c < 3; ++c) {
        EXPECT_DOUBLE_EQ(moved[perm[c]].mean, base[c].mean);
        EXPECT_DOUBLE_EQ(moved[perm[c]].stddev, base[c].stddev);
        EXPECT_EQ(moved[perm[c]].count, base[c].count);
    }
}

TEST(Decode, MeanSimilarityValidation) {
    ComparisonMatrix m;
    m.n = 2;
    m.values = {1.0, 0.5, 0.5, 1.0};
    EXPECT_THROW(mean_similarity(m, {0}, 0), ParameterError);
    EXPECT_THROW(mean_similarity(m, {0, 1}, 2), ParameterError);
    EXPECT_THROW(mean_similarity(m, {0, -1}, 0), ParameterError);
}

TEST(Decode, SweepOnIdenticalTrainsHasZeroMargin) {
    const SpikeData s =
        make_spikes({{1.0, 9.0}, {1.0, 9.0}, {1.0, 9.0}, {1.0, 9.0}}, 16.0);
    const SeparabilitySweep sweep =
        separability_sweep(s, {0, 0, 1, 1}, {4.0}, {0, 2});
    ASSERT_EQ(sweep.margin.size(), 1u);
    EXPECT_DOUBLE_EQ(sweep.margin[0], 0.0);
    EXPECT_DOUBLE_EQ(sweep.community_margin[0][0], 0.0);
    EXPECT_DOUBLE_EQ(sweep.community_margin[0][1], 0.0);
}

TEST(Decode, SweepMatchesNaiveRecomputation) {
    std::mt19937_64 rng(31);
    const int n = 12;
    const SpikeData s = random_spikes(rng, n, 96.0, 0.08);
    const std::vector<int> labels{0, 0, 0, 0, 1, 1, 1, 1, 2, 2, 2, 2};
    const std::vector<int> sources{0, 1, 4, 5, 8, 9};
    const std::vector<double> widths{6.0, 12.0};
    const SeparabilitySweep sweep = separability_sweep(s, labels, widths, sources);

    for (std::size_t w = 0; w < widths.size(); ++w) {
        const ComparisonMatrix m = comparison_matrix(binarize(s, widths[w]), Metric::plain);
        std::vector<double> expected_margin(3, std::numeric_limits<double>::infinity());
        for (int j : sources) {
            const auto stats = mean_similarity(m, labels, j);
            double own = stats[labels[j]].mean;
            double cross = -std::numeric_limits<double>::infinity();
            for (int c = 0; c < 3; ++c) {
                if (c != labels[j] && stats[c].count > 0) {
                    cross = std::max(cross, stats[c].mean);
                }
            }
            expected_margin[labels[j]] =
                std::min(expected_margin[labels[j]], own - cross);
        }
        for (int c = 0; c < 3; ++c) {
            EXPECT_DOUBLE_EQ(sweep.community_margin[w][c], expected_margin[c]);
        }
        EXPECT_DOUBLE_EQ(sweep.margin[w],
                         *std::min_element(expected_margin.begin(), expected_margin.end()));
    }
    // One stats row per (width, source community, target community).
    EXPECT_EQ(sweep.stats.size(), widths.size() * 3 * 3);
}

TEST(Decode, SweepLeavesUncoveredCommunitiesUnscored) {
    const SpikeData s = make_spikes({{1.0}, {2.0}, {3.0}, {4.0}}, 8.0);
    const SeparabilitySweep sweep = separability_sweep(s, {0, 0, 1, 1}, {2.0}, {0});
    EXPECT_FALSE(std::isnan(sweep.community_margin[0][0]));
    EXPECT_TRUE(std::isnan(sweep.community_margin[0][1]));
    EXPECT_FALSE(std::isnan(sweep.margin[0]));
}

TEST(Decode, SweepGuardsWarnButProceed) {
    const SpikeData s = make_spikes({{1.0}, {2.0}}, 64.0);
    testing::internal::CaptureStderr();
    separability_sweep(s, {0, 1}, {4.0}, {0, 1}, 8.0, 0.0);
    EXPECT_NE(testing::internal::GetCapturedStderr().find("warning"), std::string::npos);
    testing::internal::CaptureStderr();
    separability_sweep(s, {0, 1}, {32.0}, {0, 1}, 0.0, 16.0);
    EXPECT_NE(testing::internal::GetCapturedStderr().find("warning"), std::string::npos);
}

TEST(Decode, SweepValidation) {
    const SpikeData s = make_spikes({{1.0}, {2.0}}, 8.0);
    EXPECT_THROW(separability_sweep(s, {0, 1}, {}, {0}), ParameterError);
    EXPECT_THROW(separability_sweep(s, {0, 1}, {2.0}, {}), ParameterError);
    EXPECT_THROW(separability_sweep(s, {0}, {2.0}, {0}), ParameterError);
    EXPECT_THROW(separability_sweep(s, {0, 1}, {2.0}, {5}), ParameterError);
}

TEST(Decode, ReconstructRecoversPerfectBlocks) {
    const int n = 9;
    ComparisonMatrix m;
    m.n = n;
    m.values.assign(n * n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i / 3 == j / 3) {
                m.values[static_cast<std::size_t>(i) * n + j] = 1.0;
            }
        }
    }
    const std::vector<int> predicted = reconstruct_from_seeds(m, {0, 3, 6}, 0.5);
    for (int i = 0; i < n; ++i) {
        EXPECT_EQ(predicted[i], i / 3);
    }
}

TEST(Decode, ReconstructThresholdAndTies) {
    ComparisonMatrix m;
    m.n = 3;
    m.values = {1.0, 0.4, 0.4,
                0.4, 1.0, 0.0,
                0.4, 0.0, 1.0};
    // Vertex 0 ties between both seeds: lowest seed index wins.
    const auto tied = reconstruct_from_seeds(m, {1, 2}, 0.0);
    EXPECT_EQ(tied[0], 0);
    EXPECT_EQ(tied[1], 0);
    EXPECT_EQ(tied[2], 1);

    // A threshold above every entry leaves non-seeds unassigned.
    const auto strict = reconstruct_from_seeds(m, {1, 2}, 0.9);
    EXPECT_EQ(strict[0], kUnassigned);
    EXPECT_EQ(strict[1], 0);
    EXPECT_EQ(strict[2], 1);

    EXPECT_THROW(reconstruct_from_seeds(m, {1, 1}, 0.0), ParameterError);
    EXPECT_THROW(reconstruct_from_seeds(m, {}, 0.0), ParameterError);
    EXPECT_THROW(reconstruct_from_seeds(m, {7}, 0.0), ParameterError);
}

}  // namespace
}  // namespace spikecom
