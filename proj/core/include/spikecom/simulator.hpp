#pragma once

#include <vector>

#include "spikecom/network.hpp"
#include "spikecom/stimulus.hpp"

namespace spikecom {

struct SimulationConfig {
    double dt_ms = 0.1;
    // 0 means run for the schedule's own horizon.
    double duration_ms = 0.0;
    bool record_potentials = false;
    // Optional clamp on how far inhibition can pull the membrane down.
    bool has_potential_floor = false;
    double potential_floor_v = 0.0;
};

struct SpikeData {
    int n = 0;
    std::vector<std::vector<double>> trains;  // per-neuron spike times, ms
    double duration_ms = 0.0;

    long long total_spikes() const;
};

// Checks per-train monotonicity, refractory separation and the time range.
void validate(const SpikeData& spikes, double t_refract_ms = 0.0);

struct MembraneTrace {
    int neuron = 0;
    std::vector<double> time_ms;
    std::vector<double> potential_v;
};

SpikeData run_simulation(const SpikingNetwork& net, const DriveSchedule& schedule,
                         const SimulationConfig& cfg);

// Same dynamics as run_simulation, sampling the membrane potential of the
// requested neurons once per step.
std::vector<MembraneTrace> record_membrane(const SpikingNetwork& net, const DriveSchedule& schedule,
                                           const SimulationConfig& cfg,
                                           const std::vector<int>& neurons);

}  // namespace spikecom
