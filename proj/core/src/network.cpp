#include "spikecom/network.hpp"

#include "spikecom/errors.hpp"

namespace spikecom {

void validate(const NeuronParams& p) {
    if (p.tau_ms <= 0.0) {
        throw ParameterError("neuron params: tau must be positive");
    }
    if (p.t_refract_ms < 0.0) {
        throw ParameterError("neuron params: refractory period must be nonnegative");
    }
    if (p.v_reset >= p.v_th) {
        throw ParameterError("neuron params: require v_reset < v_th");
    }
    if (p.v_rest > p.v_th) {
        throw ParameterError("neuron params: require v_rest <= v_th");
    }
    if (p.r_membrane <= 0.0) {
        throw ParameterError("neuron params: r_membrane must be positive");
    }
}

void validate(const SynapseConfig& s) {
    if (!(s.w_excitatory > 0.0) || !(s.w_inhibitory < 0.0)) {
        throw ParameterError("synapse config: require w_excitatory > 0 > w_inhibitory");
    }
}

void validate(const SpikingNetwork& net) {
    if (net.n < 0 || net.weights.size() != static_cast<std::size_t>(net.n) * net.n) {
        throw ParameterError("network: weight matrix size does not match n");
    }
    validate(net.params);
    for (int i = 0; i < net.n; ++i) {
        if (net.weight(i, i) != 0.0) {
            throw ParameterError("network: nonzero diagonal at " + std::to_string(i));
        }
        for (int j = i + 1; j < net.n; ++j) {
            if (net.weight(i, j) != net.weight(j, i)) {
                throw ParameterError("network: asymmetric weights at " + std::to_string(i) + "," +
                                     std::to_string(j));
            }
        }
    }
}

SpikingNetwork map_graph_to_network(const LabeledGraph& g, const NeuronParams& params,
                                    const SynapseConfig& syn) {
    validate(g);
    validate(params);
    validate(syn);

    SpikingNetwork net;
    net.n = g.n;
    net.params = params;
    net.weights.assign(static_cast<std::size_t>(g.n) * g.n, syn.w_inhibitory);
    for (int i = 0; i < g.n; ++i) {
        net.weights[static_cast<std::size_t>(i) * g.n + i] = 0.0;
    }
    for (const auto& [u, v] : g.edges) {
        net.weights[static_cast<std::size_t>(u) * g.n + v] = syn.w_excitatory;
        net.weights[static_cast<std::size_t>(v) * g.n + u] = syn.w_excitatory;
    }
    return net;
}

NetworkSummary network_summary(const SpikingNetwork& net) {
    NetworkSummary s;
    s.n = net.n;
    for (int i = 0; i < net.n; ++i) {
        for (int j = 0; j < net.n; ++j) {
            if (i == j) {
                continue;
            }
            const double w = net.weight(i, j);
            if (w > 0.0) {
                ++s.excitatory;
            } else if (w < 0.0) {
                ++s.inhibitory;
            }
        }
    }
    return s;
}

}  // namespace spikecom
