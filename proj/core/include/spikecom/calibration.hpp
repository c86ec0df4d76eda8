#pragma once

#include "spikecom/network.hpp"

namespace spikecom {

// Time for the membrane to charge from v_reset to threshold under a plateau
// drive of 2*a_max. Throws ParameterError when the plateau cannot reach
// threshold at all.
double charging_time(const NeuronParams& p, double a_max);

// Steady firing period of a driven neuron: refractory hold plus recharge.
double active_isi(const NeuronParams& p, double a_max);

// Plateau amplitude that makes the driven ISI hit target_isi_ms exactly.
double amax_for_target_isi(const NeuronParams& p, double target_isi_ms);

// Whether a neuron at rest fires after two excitatory spikes isi_ms apart:
// the second kick on top of the first one's residual must clear threshold.
bool response_feasible(const NeuronParams& p, const SynapseConfig& syn, double isi_ms);

struct BipolarThresholds {
    double f_min;
    double f_max;
    bool bounds_crossed;  // true when f_min >= f_max, i.e. the band is empty
};

// Firing-count band separating in-community responders from outsiders.
// r1 counts spikes of the driven neuron per pulse, r2 spikes of a responding
// neighbor. neighbor_fraction is the fraction of same-community neighbors
// assumed to respond when estimating the upper bound.
BipolarThresholds bipolar_thresholds(int r1, int r2, int community_order, double avg_degree,
                                     double neighbor_fraction = 0.5);

struct CalibrationReport {
    double charging_ms;
    double active_isi_ms;
    double response_isi_ms;
    double alpha;  // |w| / v_th
    bool response_ok;
    int r1;  // driven spikes per pulse
    int r2;  // responder spikes per pulse
    double f_min;
    double f_max;
    bool bounds_crossed;
};

CalibrationReport calibrate(const NeuronParams& p, const SynapseConfig& syn, double a_max,
                            double pulse_width_ms, int community_order, double avg_degree,
                            double neighbor_fraction = 0.5);

}  // namespace spikecom
