#pragma once

#include <cstdint>
#include <vector>

#include "spikecom/graph.hpp"

namespace spikecom {

// Smoothed square pulse aimed at a single neuron. The waveform
//   a_max * (tanh(beta * (t - t1)) + tanh(beta * (t2 - t)))
// plateaus at 2 * a_max inside [t1, t2] and vanishes far outside, while
// staying continuous through the edges.
struct SquarePulse {
    int target = 0;
    double t1_ms = 0.0;
    double t2_ms = 0.0;
    double a_max = 0.0;  // half-amplitude (V); plateau drive is 2 * a_max
    double beta = 1.0;   // edge sharpness (1/ms)
};

double pulse_value(const SquarePulse& p, double t_ms);

// Timing and shape shared by a whole driving protocol. a_max has no usable
// default here; callers derive it from a target inter-spike interval (see
// calibration) or set it explicitly.
struct DriveParams {
    double t_start_ms = 1000.0;
    double pulse_width_ms = 200.0;
    double gap_ms = 800.0;
    double a_max = 0.0;
    double beta = 1.0;
};

void validate(const DriveParams& d);

// Time-ordered pulses with uniform spacing; at most one neuron is actively
// driven at any instant.
struct DriveSchedule {
    std::vector<SquarePulse> pulses;
    double total_duration_ms = 0.0;
    double gap_ms = 0.0;
};

void validate(const DriveSchedule& s, int n_neurons);

// One pulse per neuron of each listed community, communities in the given
// order, neurons within a community by ascending id.
DriveSchedule community_ordered_schedule(const LabeledGraph& g, const std::vector<int>& communities,
                                         const DriveParams& d);

// One pulse per neuron of the whole graph, in a seed-deterministic uniformly
// random order.
DriveSchedule random_permutation_schedule(const LabeledGraph& g, std::uint64_t seed,
                                          const DriveParams& d);

// The contiguous window during which one community's neurons are driven
// under community_ordered_schedule.
struct Epoch {
    int community = 0;
    double t_start_ms = 0.0;
    double t_end_ms = 0.0;
};

std::vector<Epoch> driving_epochs(const LabeledGraph& g, const std::vector<int>& communities,
                                  const DriveParams& d);

}  // namespace spikecom
