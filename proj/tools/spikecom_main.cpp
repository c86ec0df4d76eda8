#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "spikecom/calibration.hpp"
#include "spikecom/decode.hpp"
#include "spikecom/errors.hpp"
#include "spikecom/graph.hpp"
#include "spikecom/io.hpp"
#include "spikecom/network.hpp"
#include "spikecom/run_config.hpp"
#include "spikecom/simulator.hpp"
#include "spikecom/stimulus.hpp"

using namespace spikecom;

namespace {

std::vector<std::string> split_fields(const std::string& text, char sep) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto end = text.find(sep, start);
        if (end == std::string::npos) {
            fields.push_back(text.substr(start));
            break;
        }
        fields.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    return fields;
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
    std::vector<int> values;
    if (text.empty()) {
        return values;
    }
    for (const auto& field : split_fields(text, ',')) {
        try {
            std::size_t used = 0;
            const int value = std::stoi(field, &used);
            if (used != field.size()) {
                throw std::invalid_argument(field);
            }
            values.push_back(value);
        } catch (const std::exception&) {
            throw ParameterError(std::string(what) + ": bad entry '" + field + "'");
        }
    }
    return values;
}

std::vector<double> parse_double_list(const std::string& text, const char* what) {
    std::vector<double> values;
    if (text.empty()) {
        return values;
    }
    for (const auto& field : split_fields(text, ',')) {
        try {
            std::size_t used = 0;
            const double value = std::stod(field, &used);
            if (used != field.size()) {
                throw std::invalid_argument(field);
            }
            values.push_back(value);
        } catch (const std::exception&) {
            throw ParameterError(std::string(what) + ": bad entry '" + field + "'");
        }
    }
    return values;
}

std::vector<Window> parse_windows(const std::string& text) {
    std::vector<Window> windows;
    for (const auto& field : split_fields(text, ',')) {
        const auto colon = field.find(':');
        if (colon == std::string::npos) {
            throw ParameterError("windows: expected start:end, got '" + field + "'");
        }
        const auto start = parse_double_list(field.substr(0, colon), "windows");
        const auto end = parse_double_list(field.substr(colon + 1), "windows");
        windows.emplace_back(start.at(0), end.at(0));
    }
    return windows;
}

std::string join_ints(const std::vector<int>& values) {
    std::string out;
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (k > 0) {
            out += ',';
        }
        out += std::to_string(values[k]);
    }
    return out;
}

std::string join_doubles(const std::vector<double>& values) {
    std::string out;
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (k > 0) {
            out += ',';
        }
        out += format_double(values[k]);
    }
    return out;
}

// The config file must load before CLI11 writes flag values into cfg, so the
// --config argument is pulled out of argv by hand.
std::string find_config_path(int argc, char** argv) {
    std::string path;
    for (int k = 1; k < argc; ++k) {
        const std::string arg = argv[k];
        if (arg == "--config" && k + 1 < argc) {
            path = argv[k + 1];
        } else if (arg.rfind("--config=", 0) == 0) {
            path = arg.substr(9);
        }
    }
    return path;
}

LabeledGraph obtain_graph(const RunConfig& cfg) {
    if (!cfg.graph_json_path.empty()) {
        return graph_from_json_string(read_file(cfg.graph_json_path));
    }
    if (!cfg.edges_path.empty() || !cfg.labels_path.empty()) {
        if (cfg.edges_path.empty() || cfg.labels_path.empty()) {
            throw ParameterError("graph input needs both an edge file and a label file");
        }
        return load_edge_list(read_file(cfg.edges_path), read_file(cfg.labels_path));
    }
    PartitionSpec spec;
    spec.n = cfg.n;
    spec.num_communities = cfg.num_communities;
    spec.z_out = cfg.z_out;
    spec.avg_degree = cfg.avg_degree;
    spec.seed = cfg.graph_seed();
    return generate_planted_partition(spec);
}

DriveParams drive_params(const RunConfig& cfg) {
    DriveParams d;
    d.t_start_ms = cfg.t_start_ms;
    d.pulse_width_ms = cfg.pulse_width_ms;
    d.gap_ms = cfg.gap_ms;
    d.a_max = resolve_amax(cfg);
    d.beta = cfg.beta;
    return d;
}

double schedule_horizon(const LabeledGraph& g, const RunConfig& cfg) {
    const double period = cfg.pulse_width_ms + cfg.gap_ms;
    long long pulses = 0;
    if (cfg.schedule == "random") {
        pulses = g.n;
    } else {
        for (int c : cfg.drive_communities) {
            pulses += static_cast<long long>(g.community_members(c).size());
        }
    }
    return cfg.t_start_ms + static_cast<double>(pulses) * period + cfg.t_start_ms;
}

std::filesystem::path prepare_out_dir(const RunConfig& cfg) {
    std::filesystem::path dir(cfg.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw DataError("cannot create output directory: " + cfg.out_dir);
    }
    return dir;
}

void echo_config(const RunConfig& cfg, const std::filesystem::path& dir) {
    write_file((dir / "run_config.json").string(), run_config_to_json(cfg));
}

// First member of each listed community, used for default seeds and sources.
std::vector<int> first_members(const LabeledGraph& g, const std::vector<int>& communities) {
    std::vector<int> ids;
    for (int c : communities) {
        const auto members = g.community_members(c);
        if (members.empty()) {
            throw ParameterError("community " + std::to_string(c) + " has no members");
        }
        ids.push_back(members.front());
    }
    return ids;
}

std::vector<int> all_communities(const LabeledGraph& g) {
    std::vector<int> ids(g.num_communities());
    for (std::size_t k = 0; k < ids.size(); ++k) {
        ids[k] = static_cast<int>(k);
    }
    return ids;
}

int run_gen_graph(RunConfig cfg, bool write_json) {
    validate(cfg);
    PartitionSpec spec;
    spec.n = cfg.n;
    spec.num_communities = cfg.num_communities;
    spec.z_out = cfg.z_out;
    spec.avg_degree = cfg.avg_degree;
    spec.seed = cfg.graph_seed();
    const LabeledGraph g = generate_planted_partition(spec);
    if (!is_connected(g)) {
        std::cerr << "warning: generated graph is disconnected\n";
    }
    const auto dir = prepare_out_dir(cfg);
    write_file((dir / "edges.csv").string(), save_edge_list(g));
    write_file((dir / "labels.csv").string(), save_labels(g));
    if (write_json) {
        write_file((dir / "graph.json").string(), graph_to_json_string(g));
    }
    echo_config(cfg, dir);
    const DegreeStats stats = degree_stats(g);
    std::cout << "vertices=" << g.n << " edges=" << g.edges.size()
              << " communities=" << g.num_communities()
              << " mean_degree=" << format_double(stats.mean_degree) << "\n";
    return 0;
}

int run_simulate(RunConfig cfg) {
    validate(cfg);
    const LabeledGraph g = obtain_graph(cfg);
    const SpikingNetwork net = map_graph_to_network(g, cfg.neuron, cfg.synapse);
    const DriveParams d = drive_params(cfg);
    const DriveSchedule schedule = cfg.schedule == "random"
                                       ? random_permutation_schedule(g, cfg.schedule_seed(), d)
                                       : community_ordered_schedule(g, cfg.drive_communities, d);
    SimulationConfig sim;
    sim.dt_ms = cfg.dt_ms;
    sim.duration_ms = cfg.duration_ms;
    sim.record_potentials = cfg.record_potentials;

    const SpikeData spikes = run_simulation(net, schedule, sim);
    const auto dir = prepare_out_dir(cfg);
    write_file((dir / "spikes.csv").string(), spikes_to_csv(spikes));
    write_file((dir / "schedule.csv").string(), schedule_to_csv(schedule));
    if (cfg.record_potentials || !cfg.trace_neurons.empty()) {
        std::vector<int> traced = cfg.trace_neurons;
        if (traced.empty()) {
            traced.push_back(schedule.pulses.empty() ? 0 : schedule.pulses.front().target);
        }
        const auto traces = record_membrane(net, schedule, sim, traced);
        write_file((dir / "membrane.csv").string(), traces_to_csv(traces));
    }
    echo_config(cfg, dir);
    std::cout << "neurons=" << spikes.n << " spikes=" << spikes.total_spikes()
              << " duration_ms=" << format_double(spikes.duration_ms) << "\n";
    return 0;
}

struct DecodeToggles {
    bool matrix = false;
    bool sweep = false;
    bool bipolar = false;
    bool reconstruct = false;
};

int run_decode(RunConfig cfg, const std::string& spikes_path, int n_override,
               double duration_override, DecodeToggles toggles, const std::string& windows_arg,
               const std::string& sources_arg, const std::string& seeds_arg) {
    validate(cfg);
    if (!toggles.matrix && !toggles.sweep && !toggles.bipolar && !toggles.reconstruct) {
        toggles.matrix = true;
    }

    const LabeledGraph g = obtain_graph(cfg);
    int n_hint = n_override >= 0 ? n_override : g.n;
    double duration_hint = duration_override;
    if (duration_hint < 0.0) {
        duration_hint = cfg.duration_ms > 0.0 ? cfg.duration_ms : schedule_horizon(g, cfg);
    }
    const SpikeData spikes = spikes_from_csv(read_file(spikes_path), n_hint, duration_hint);
    if (spikes.n != g.n) {
        throw DataError("spike data covers " + std::to_string(spikes.n) + " neurons but the graph has " +
                        std::to_string(g.n));
    }

    const auto dir = prepare_out_dir(cfg);
    const Metric metric = cfg.metric == "plain" ? Metric::plain : Metric::weighted;

    if (toggles.matrix) {
        const BinaryCodeMatrix codes = binarize(spikes, cfg.matrix_bin_ms);
        const ComparisonMatrix matrix = comparison_matrix(codes, metric);
        write_file((dir / "matrix.csv").string(), matrix_to_csv(matrix));
    }
    if (toggles.sweep) {
        std::vector<int> sources = sources_arg.empty()
                                       ? first_members(g, all_communities(g))
                                       : parse_int_list(sources_arg, "sources");
        double guard_min = 0.0;
        double guard_max = 0.0;
        if (cfg.schedule == "random") {
            guard_min = cfg.neuron.t_refract_ms + charging_time(cfg.neuron, resolve_amax(cfg));
            guard_max = cfg.pulse_width_ms;
        }
        const SeparabilitySweep sweep =
            separability_sweep(spikes, g.labels, cfg.sweep_bins_ms, sources, guard_min, guard_max);
        write_file((dir / "sweep.csv").string(), sweep_to_csv(sweep));
    }
    if (toggles.bipolar) {
        std::vector<Window> windows;
        if (windows_arg == "auto") {
            if (cfg.schedule != "community-ordered") {
                throw ParameterError("auto windows need a community-ordered schedule");
            }
            for (const Epoch& e : driving_epochs(g, cfg.drive_communities, drive_params(cfg))) {
                windows.emplace_back(e.t_start_ms, e.t_end_ms);
            }
        } else {
            windows = parse_windows(windows_arg);
        }
        const auto counts = window_spike_counts(spikes, windows);
        const BipolarStateTable table = bipolar_decode(counts, windows, cfg.f0);
        write_file((dir / "bipolar.csv").string(), bipolar_to_csv(table));
    }
    if (toggles.reconstruct) {
        std::vector<int> seeds;
        if (seeds_arg.empty()) {
            seeds = cfg.schedule == "community-ordered"
                        ? first_members(g, cfg.drive_communities)
                        : first_members(g, all_communities(g));
        } else {
            seeds = parse_int_list(seeds_arg, "seeds");
        }
        // Reconstruction always scores with the plain metric; the weighted one
        // is for visual block analysis.
        const BinaryCodeMatrix codes = binarize(spikes, cfg.matrix_bin_ms);
        const ComparisonMatrix matrix = comparison_matrix(codes, Metric::plain);
        const std::vector<int> predicted = reconstruct_from_seeds(matrix, seeds, cfg.theta);
        std::string out;
        for (std::size_t v = 0; v < predicted.size(); ++v) {
            out += std::to_string(v);
            out += ',';
            out += std::to_string(predicted[v]);
            out += '\n';
        }
        write_file((dir / "predicted_labels.csv").string(), out);
    }
    echo_config(cfg, dir);
    return 0;
}

int run_calibrate(const RunConfig& cfg, int order_override, double fraction, bool as_json) {
    const double a_max = resolve_amax(cfg);
    const int order =
        order_override > 0 ? order_override : cfg.n / std::max(cfg.num_communities, 1);
    const CalibrationReport rep = calibrate(cfg.neuron, cfg.synapse, a_max, cfg.pulse_width_ms,
                                            order, cfg.avg_degree, fraction);
    if (as_json) {
        nlohmann::json j = {{"a_max", a_max},
                            {"charging_ms", rep.charging_ms},
                            {"active_isi_ms", rep.active_isi_ms},
                            {"response_isi_ms", rep.response_isi_ms},
                            {"alpha", rep.alpha},
                            {"response_feasible", rep.response_ok},
                            {"r1", rep.r1},
                            {"r2", rep.r2},
                            {"f_min", rep.f_min},
                            {"f_max", rep.f_max},
                            {"bounds_crossed", rep.bounds_crossed}};
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "a_max=" << format_double(a_max) << "\n"
              << "charging_ms=" << format_double(rep.charging_ms) << "\n"
              << "active_isi_ms=" << format_double(rep.active_isi_ms) << "\n"
              << "response_isi_ms=" << format_double(rep.response_isi_ms) << "\n"
              << "alpha=" << format_double(rep.alpha) << "\n"
              << "response_feasible=" << (rep.response_ok ? "true" : "false") << "\n"
              << "r1=" << rep.r1 << "\n"
              << "r2=" << rep.r2 << "\n"
              << "f_min=" << format_double(rep.f_min) << "\n"
              << "f_max=" << format_double(rep.f_max) << "\n"
              << "bounds_crossed=" << (rep.bounds_crossed ? "true" : "false") << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Community detection through spiking-network dynamics"};
    app.require_subcommand(1);

    RunConfig cfg;
    const std::string config_path = find_config_path(argc, argv);
    if (!config_path.empty()) {
        try {
            cfg = run_config_from_json(read_file(config_path));
        } catch (const DataError& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        }
    }
    std::string config_opt;  // consumed above; registered so parsing accepts it

    auto add_gen_options = [&](CLI::App* sub) {
        sub->add_option("--n", cfg.n, "Vertex count for generation")->capture_default_str();
        sub->add_option("--communities", cfg.num_communities, "Community count for generation")
            ->capture_default_str();
        sub->add_option("--z-out", cfg.z_out, "Expected inter-community degree")
            ->capture_default_str();
        sub->add_option("--avg-degree", cfg.avg_degree, "Expected total degree")
            ->capture_default_str();
    };
    auto add_graph_source_options = [&](CLI::App* sub) {
        sub->add_option("--edges", cfg.edges_path, "Edge-list CSV path");
        sub->add_option("--labels", cfg.labels_path, "Label CSV path");
        sub->add_option("--graph-json", cfg.graph_json_path, "Graph bundle JSON path");
        add_gen_options(sub);
    };
    auto add_common_options = [&](CLI::App* sub) {
        sub->add_option("--config", config_opt, "JSON config file; explicit flags override it");
        sub->add_option("--seed", cfg.master_seed, "Master seed")->capture_default_str();
        sub->add_option("--out", cfg.out_dir, "Output directory")->capture_default_str();
    };

    // gen-graph
    auto* gen = app.add_subcommand("gen-graph", "Sample a planted-partition benchmark graph");
    bool gen_json = false;
    add_gen_options(gen);
    add_common_options(gen);
    gen->add_flag("--json", gen_json, "Also write the graph as a JSON bundle");

    // simulate
    auto* sim = app.add_subcommand("simulate", "Drive the mapped network and record spikes");
    std::string drive_arg = join_ints(cfg.drive_communities);
    std::string trace_arg;
    add_graph_source_options(sim);
    add_common_options(sim);
    sim->add_option("--schedule", cfg.schedule, "community-ordered or random")
        ->capture_default_str();
    sim->add_option("--drive", drive_arg, "Communities to drive, in order (comma separated)")
        ->capture_default_str();
    sim->add_option("--t-start", cfg.t_start_ms, "Lead-in before the first pulse (ms)")
        ->capture_default_str();
    sim->add_option("--pulse-width", cfg.pulse_width_ms, "Pulse width t_A (ms)")
        ->capture_default_str();
    sim->add_option("--gap", cfg.gap_ms, "Quiet gap between pulses (ms)")->capture_default_str();
    sim->add_option("--beta", cfg.beta, "Pulse edge steepness (1/ms)")->capture_default_str();
    sim->add_option("--a-max", cfg.a_max, "Pulse amplitude (V); 0 derives it from --target-isi")
        ->capture_default_str();
    sim->add_option("--target-isi", cfg.target_isi_ms, "Driven firing period to calibrate for (ms)")
        ->capture_default_str();
    sim->add_option("--dt", cfg.dt_ms, "Integration step (ms)")->capture_default_str();
    sim->add_option("--duration", cfg.duration_ms, "Horizon (ms); 0 uses the schedule's own")
        ->capture_default_str();
    sim->add_flag("--record-potentials", cfg.record_potentials, "Also write membrane traces");
    sim->add_option("--trace", trace_arg, "Neuron ids to trace (comma separated)");

    // decode
    auto* dec = app.add_subcommand("decode", "Turn a spike CSV into similarity analyses");
    std::string spikes_path;
    int n_override = -1;
    double duration_override = -1.0;
    DecodeToggles toggles;
    std::string windows_arg = "auto";
    std::string sources_arg;
    std::string seeds_arg;
    std::string sweep_arg = join_doubles(cfg.sweep_bins_ms);
    add_graph_source_options(dec);
    add_common_options(dec);
    dec->add_option("--spikes", spikes_path, "Spike CSV path")->required();
    dec->add_option("--spike-n", n_override, "Neuron count of the spike data (default: graph size)");
    dec->add_option("--spike-duration", duration_override,
                    "Recording duration in ms (default: from config)");
    dec->add_option("--schedule", cfg.schedule,
                    "Schedule the spikes came from; sets window and seed defaults")
        ->capture_default_str();
    dec->add_option("--metric", cfg.metric, "plain or weighted")->capture_default_str();
    dec->add_option("--bin-dt", cfg.matrix_bin_ms, "Bin width for the comparison matrix (ms)")
        ->capture_default_str();
    dec->add_option("--f0", cfg.f0, "Firing-count threshold for bipolar states")
        ->capture_default_str();
    dec->add_option("--theta", cfg.theta, "Assignment threshold for reconstruction")
        ->capture_default_str();
    dec->add_flag("--matrix", toggles.matrix, "Write the comparison matrix (default action)");
    dec->add_flag("--sweep", toggles.sweep, "Write separability curves over --sweep-bins");
    dec->add_option("--sweep-bins", sweep_arg, "Bin widths for the sweep (ms, comma separated)")
        ->capture_default_str();
    dec->add_flag("--bipolar", toggles.bipolar, "Write the bipolar state table");
    dec->add_option("--windows", windows_arg,
                    "Count windows: 'auto' (driving epochs) or start:end,... in ms")
        ->capture_default_str();
    dec->add_flag("--reconstruct", toggles.reconstruct, "Write predicted labels from seeds");
    dec->add_option("--sources", sources_arg,
                    "Sweep source neurons (default: first member of each community)");
    dec->add_option("--seeds", seeds_arg,
                    "Reconstruction seeds (default: first member of each driven community)");

    // calibrate
    auto* cal = app.add_subcommand("calibrate", "Evaluate the closed-form firing relations");
    int order_override = 0;
    double fraction = 0.5;
    bool cal_json = false;
    add_common_options(cal);
    cal->add_option("--a-max", cfg.a_max, "Pulse amplitude (V); 0 derives it from --target-isi")
        ->capture_default_str();
    cal->add_option("--target-isi", cfg.target_isi_ms, "Driven firing period to calibrate for (ms)")
        ->capture_default_str();
    cal->add_option("--pulse-width", cfg.pulse_width_ms, "Pulse width t_A (ms)")
        ->capture_default_str();
    cal->add_option("--tau", cfg.neuron.tau_ms, "Membrane time constant (ms)")
        ->capture_default_str();
    cal->add_option("--v-th", cfg.neuron.v_th, "Firing threshold (V)")->capture_default_str();
    cal->add_option("--v-reset", cfg.neuron.v_reset, "Reset potential (V)")->capture_default_str();
    cal->add_option("--t-refract", cfg.neuron.t_refract_ms, "Refractory period (ms)")
        ->capture_default_str();
    cal->add_option("--w", cfg.synapse.w_excitatory, "Excitatory weight (V)")
        ->capture_default_str();
    cal->add_option("--order", order_override, "Community order (default: n / communities)");
    cal->add_option("--avg-degree", cfg.avg_degree, "Expected total degree")
        ->capture_default_str();
    cal->add_option("--fraction", fraction, "Assumed responding fraction of neighbors")
        ->capture_default_str();
    cal->add_flag("--json", cal_json, "Print the report as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        cfg.drive_communities = parse_int_list(drive_arg, "drive communities");
        cfg.trace_neurons = parse_int_list(trace_arg, "trace neurons");
        cfg.sweep_bins_ms = parse_double_list(sweep_arg, "sweep bins");
        if (gen->parsed()) {
            return run_gen_graph(cfg, gen_json);
        }
        if (sim->parsed()) {
            return run_simulate(cfg);
        }
        if (dec->parsed()) {
            return run_decode(cfg, spikes_path, n_override, duration_override, toggles,
                              windows_arg, sources_arg, seeds_arg);
        }
        if (cal->parsed()) {
            return run_calibrate(cfg, order_override, fraction, cal_json);
        }
    } catch (const ParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
