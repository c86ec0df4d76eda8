#include "spikecom/run_config.hpp"

#include <json.hpp>

#include "spikecom/calibration.hpp"
#include "spikecom/errors.hpp"

namespace spikecom {

void validate(const RunConfig& cfg) {
    if (cfg.schedule != "community-ordered" && cfg.schedule != "random") {
        throw ParameterError("config: schedule must be 'community-ordered' or 'random'");
    }
    if (cfg.metric != "plain" && cfg.metric != "weighted") {
        throw ParameterError("config: metric must be 'plain' or 'weighted'");
    }
    if (cfg.a_max < 0.0) {
        throw ParameterError("config: a_max must be nonnegative");
    }
    if (cfg.a_max == 0.0 && cfg.target_isi_ms <= 0.0) {
        throw ParameterError("config: target ISI must be positive when a_max is unset");
    }
    validate(cfg.neuron);
    validate(cfg.synapse);
}

std::string run_config_to_json(const RunConfig& cfg) {
    nlohmann::json j;
    j["graph"] = {{"n", cfg.n},
                  {"num_communities", cfg.num_communities},
                  {"z_out", cfg.z_out},
                  {"avg_degree", cfg.avg_degree},
                  {"edges_path", cfg.edges_path},
                  {"labels_path", cfg.labels_path},
                  {"json_path", cfg.graph_json_path}};
    j["neuron"] = {{"tau_ms", cfg.neuron.tau_ms},
                   {"v_th", cfg.neuron.v_th},
                   {"v_reset", cfg.neuron.v_reset},
                   {"v_rest", cfg.neuron.v_rest},
                   {"t_refract_ms", cfg.neuron.t_refract_ms},
                   {"r_membrane", cfg.neuron.r_membrane}};
    j["synapse"] = {{"w_excitatory", cfg.synapse.w_excitatory},
                    {"w_inhibitory", cfg.synapse.w_inhibitory}};
    j["drive"] = {{"schedule", cfg.schedule},
                  {"communities", cfg.drive_communities},
                  {"t_start_ms", cfg.t_start_ms},
                  {"pulse_width_ms", cfg.pulse_width_ms},
                  {"gap_ms", cfg.gap_ms},
                  {"beta", cfg.beta},
                  {"a_max", cfg.a_max},
                  {"target_isi_ms", cfg.target_isi_ms}};
    j["simulation"] = {{"dt_ms", cfg.dt_ms},
                       {"duration_ms", cfg.duration_ms},
                       {"record_potentials", cfg.record_potentials},
                       {"trace_neurons", cfg.trace_neurons}};
    j["decode"] = {{"matrix_bin_ms", cfg.matrix_bin_ms},
                   {"metric", cfg.metric},
                   {"f0", cfg.f0},
                   {"sweep_bins_ms", cfg.sweep_bins_ms},
                   {"theta", cfg.theta}};
    j["out_dir"] = cfg.out_dir;
    j["master_seed"] = cfg.master_seed;
    return j.dump(2) + "\n";
}

RunConfig run_config_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("config JSON: ") + e.what());
    }
    RunConfig cfg;
    try {
        const auto g = j.value("graph", nlohmann::json::object());
        cfg.n = g.value("n", cfg.n);
        cfg.num_communities = g.value("num_communities", cfg.num_communities);
        cfg.z_out = g.value("z_out", cfg.z_out);
        cfg.avg_degree = g.value("avg_degree", cfg.avg_degree);
        cfg.edges_path = g.value("edges_path", cfg.edges_path);
        cfg.labels_path = g.value("labels_path", cfg.labels_path);
        cfg.graph_json_path = g.value("json_path", cfg.graph_json_path);

        const auto nn = j.value("neuron", nlohmann::json::object());
        cfg.neuron.tau_ms = nn.value("tau_ms", cfg.neuron.tau_ms);
        cfg.neuron.v_th = nn.value("v_th", cfg.neuron.v_th);
        cfg.neuron.v_reset = nn.value("v_reset", cfg.neuron.v_reset);
        cfg.neuron.v_rest = nn.value("v_rest", cfg.neuron.v_rest);
        cfg.neuron.t_refract_ms = nn.value("t_refract_ms", cfg.neuron.t_refract_ms);
        cfg.neuron.r_membrane = nn.value("r_membrane", cfg.neuron.r_membrane);

        const auto s = j.value("synapse", nlohmann::json::object());
        cfg.synapse.w_excitatory = s.value("w_excitatory", cfg.synapse.w_excitatory);
        cfg.synapse.w_inhibitory = s.value("w_inhibitory", cfg.synapse.w_inhibitory);

        const auto d = j.value("drive", nlohmann::json::object());
        cfg.schedule = d.value("schedule", cfg.schedule);
        cfg.drive_communities = d.value("communities", cfg.drive_communities);
        cfg.t_start_ms = d.value("t_start_ms", cfg.t_start_ms);
        cfg.pulse_width_ms = d.value("pulse_width_ms", cfg.pulse_width_ms);
        cfg.gap_ms = d.value("gap_ms", cfg.gap_ms);
        cfg.beta = d.value("beta", cfg.beta);
        cfg.a_max = d.value("a_max", cfg.a_max);
        cfg.target_isi_ms = d.value("target_isi_ms", cfg.target_isi_ms);

        const auto sim = j.value("simulation", nlohmann::json::object());
        cfg.dt_ms = sim.value("dt_ms", cfg.dt_ms);
        cfg.duration_ms = sim.value("duration_ms", cfg.duration_ms);
        cfg.record_potentials = sim.value("record_potentials", cfg.record_potentials);
        cfg.trace_neurons = sim.value("trace_neurons", cfg.trace_neurons);

        const auto dec = j.value("decode", nlohmann::json::object());
        cfg.matrix_bin_ms = dec.value("matrix_bin_ms", cfg.matrix_bin_ms);
        cfg.metric = dec.value("metric", cfg.metric);
        cfg.f0 = dec.value("f0", cfg.f0);
        cfg.sweep_bins_ms = dec.value("sweep_bins_ms", cfg.sweep_bins_ms);
        cfg.theta = dec.value("theta", cfg.theta);

        cfg.out_dir = j.value("out_dir", cfg.out_dir);
        cfg.master_seed = j.value("master_seed", cfg.master_seed);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("config JSON: ") + e.what());
    }
    return cfg;
}

double resolve_amax(const RunConfig& cfg) {
    if (cfg.a_max > 0.0) {
        return cfg.a_max;
    }
    return amax_for_target_isi(cfg.neuron, cfg.target_isi_ms);
}

}  // namespace spikecom
