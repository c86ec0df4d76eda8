#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spikecom/network.hpp"

namespace spikecom {

// Full description of one experiment. Defaults reproduce the standard
// benchmark protocol: 128 vertices in 4 communities, community-ordered
// driving of communities 0, 1 and 3, weighted decoding at 8 s bins.
struct RunConfig {
    // Graph: either generator parameters or explicit input files.
    int n = 128;
    int num_communities = 4;
    double z_out = 2.0;
    double avg_degree = 16.0;
    std::string edges_path;
    std::string labels_path;
    std::string graph_json_path;

    NeuronParams neuron;
    SynapseConfig synapse;

    std::string schedule = "community-ordered";  // or "random"
    std::vector<int> drive_communities = {0, 1, 3};
    double t_start_ms = 1000.0;
    double pulse_width_ms = 200.0;
    double gap_ms = 800.0;
    double beta = 1.0;
    double a_max = 0.0;  // 0 means derive from target_isi_ms
    double target_isi_ms = 21.0;

    double dt_ms = 0.1;
    double duration_ms = 0.0;  // 0 means the schedule's own horizon
    bool record_potentials = false;
    std::vector<int> trace_neurons;

    double matrix_bin_ms = 8000.0;
    std::string metric = "weighted";  // or "plain"
    double f0 = 55.0;
    std::vector<double> sweep_bins_ms = {30.0, 100.0, 400.0, 1600.0};
    double theta = 0.0;

    std::string out_dir = ".";
    std::uint64_t master_seed = 1;

    // Stage seeds are fixed offsets of the master seed so each stage can be
    // reproduced on its own.
    std::uint64_t graph_seed() const { return master_seed + 1; }
    std::uint64_t schedule_seed() const { return master_seed + 2; }
};

void validate(const RunConfig& cfg);

std::string run_config_to_json(const RunConfig& cfg);

// Missing keys keep their defaults, so partial configs are fine.
RunConfig run_config_from_json(const std::string& text);

// The configured amplitude, or the one matching target_isi_ms when unset.
double resolve_amax(const RunConfig& cfg);

}  // namespace spikecom
