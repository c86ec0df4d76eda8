#pragma once

#include <span>
#include <vector>

#include "spikecom/graph.hpp"

namespace spikecom {

// Homogeneous leaky integrate-and-fire parameters shared by every neuron.
// Drives are expressed directly in volts, so r_membrane stays at 1 and the
// plateau drive of a pulse equals 2 * a_max.
struct NeuronParams {
    double tau_ms = 25.0;        // membrane time constant
    double v_th = 0.8;           // firing threshold (V)
    double v_reset = 0.0;        // potential right after a spike (V)
    double v_rest = 0.0;         // initial potential (V)
    double t_refract_ms = 20.0;  // refractory period
    double r_membrane = 1.0;     // drive resistance scaling
};

void validate(const NeuronParams& p);

struct SynapseConfig {
    double w_excitatory = 0.75;   // weight for graph edges (V)
    double w_inhibitory = -0.75;  // weight for non-edges (V)
};

void validate(const SynapseConfig& s);

// Fully connected network: graph edges become excitatory synapses and
// non-edges inhibitory ones. The weight matrix is symmetric with a zero
// diagonal; every off-diagonal entry is exactly w_excitatory or w_inhibitory.
struct SpikingNetwork {
    int n = 0;
    NeuronParams params;
    std::vector<double> weights;  // n*n, row-major

    double weight(int i, int j) const { return weights[static_cast<std::size_t>(i) * n + j]; }
    std::span<const double> row(int i) const {
        return {weights.data() + static_cast<std::size_t>(i) * n, static_cast<std::size_t>(n)};
    }
};

void validate(const SpikingNetwork& net);

SpikingNetwork map_graph_to_network(const LabeledGraph& g, const NeuronParams& params,
                                    const SynapseConfig& syn);

struct NetworkSummary {
    int n = 0;
    long long excitatory = 0;  // positive off-diagonal entries, equals 2|E|
    long long inhibitory = 0;
};

NetworkSummary network_summary(const SpikingNetwork& net);

}  // namespace spikecom
