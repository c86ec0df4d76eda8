#include "spikecom/stimulus.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "spikecom/errors.hpp"
#include "spikecom/random.hpp"

namespace spikecom {

double pulse_value(const SquarePulse& p, double t_ms) {
    return p.a_max * (std::tanh(p.beta * (t_ms - p.t1_ms)) + std::tanh(p.beta * (p.t2_ms - t_ms)));
}

void validate(const DriveParams& d) {
    if (d.t_start_ms < 0.0) {
        throw ParameterError("drive params: t_start must be nonnegative");
    }
    if (d.pulse_width_ms <= 0.0) {
        throw ParameterError("drive params: pulse width must be positive");
    }
    if (d.gap_ms < 0.0) {
        throw ParameterError("drive params: gap must be nonnegative");
    }
    if (d.a_max <= 0.0) {
        throw ParameterError("drive params: a_max must be positive");
    }
    if (d.beta <= 0.0) {
        throw ParameterError("drive params: beta must be positive");
    }
}

void validate(const DriveSchedule& s, int n_neurons) {
    for (std::size_t k = 0; k < s.pulses.size(); ++k) {
        const auto& p = s.pulses[k];
        if (p.target < 0 || p.target >= n_neurons) {
            throw ParameterError("schedule: pulse target " + std::to_string(p.target) +
                                 " out of range for " + std::to_string(n_neurons) + " neurons");
        }
        if (p.t2_ms <= p.t1_ms) {
            throw ParameterError("schedule: pulse with nonpositive width");
        }
        if (p.a_max <= 0.0 || p.beta <= 0.0) {
            throw ParameterError("schedule: pulse needs a_max > 0 and beta > 0");
        }
        if (k > 0) {
            const double spacing = p.t1_ms - s.pulses[k - 1].t2_ms;
            if (std::abs(spacing - s.gap_ms) > 1e-6) {
                throw ParameterError("schedule: non-uniform pulse spacing at pulse " +
                                     std::to_string(k));
            }
        }
    }
    if (!s.pulses.empty() && s.total_duration_ms < s.pulses.back().t2_ms + s.gap_ms) {
        throw ParameterError("schedule: total duration shorter than last pulse plus gap");
    }
}

namespace {

DriveSchedule schedule_from_order(const std::vector<int>& order, const DriveParams& d) {
    DriveSchedule s;
    s.gap_ms = d.gap_ms;
    const double period = d.pulse_width_ms + d.gap_ms;
    s.pulses.reserve(order.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
        SquarePulse p;
        p.target = order[k];
        p.t1_ms = d.t_start_ms + static_cast<double>(k) * period;
        p.t2_ms = p.t1_ms + d.pulse_width_ms;
        p.a_max = d.a_max;
        p.beta = d.beta;
        s.pulses.push_back(p);
    }
    // Horizon: schedule end plus the same lead-in that precedes the first
    // pulse, so trailing responses are captured.
    s.total_duration_ms = d.t_start_ms + static_cast<double>(order.size()) * period + d.t_start_ms;
    return s;
}

}  // namespace

DriveSchedule community_ordered_schedule(const LabeledGraph& g, const std::vector<int>& communities,
                                         const DriveParams& d) {
    validate(d);
    const int k = g.num_communities();
    std::vector<int> order;
    for (int c : communities) {
        if (c < 0 || c >= k) {
            throw ParameterError("schedule: unknown community id " + std::to_string(c));
        }
        const auto members = g.community_members(c);
        order.insert(order.end(), members.begin(), members.end());
    }
    return schedule_from_order(order, d);
}

DriveSchedule random_permutation_schedule(const LabeledGraph& g, std::uint64_t seed,
                                          const DriveParams& d) {
    validate(d);
    std::vector<int> order(g.n);
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(seed);
    fisher_yates_shuffle(order, rng);
    return schedule_from_order(order, d);
}

std::vector<Epoch> driving_epochs(const LabeledGraph& g, const std::vector<int>& communities,
                                  const DriveParams& d) {
    validate(d);
    const int k = g.num_communities();
    const double period = d.pulse_width_ms + d.gap_ms;
    std::vector<Epoch> epochs;
    double t = d.t_start_ms;
    for (int c : communities) {
        if (c < 0 || c >= k) {
            throw ParameterError("epochs: unknown community id " + std::to_string(c));
        }
        const double span = static_cast<double>(g.community_members(c).size()) * period;
        epochs.push_back({c, t, t + span});
        t += span;
    }
    return epochs;
}

}  // namespace spikecom
