#include "spikecom/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <queue>
#include <set>
#include <sstream>

#include <json.hpp>

#include "spikecom/errors.hpp"
#include "spikecom/random.hpp"

namespace spikecom {

int LabeledGraph::num_communities() const {
    int max_label = -1;
    for (int c : labels) {
        max_label = std::max(max_label, c);
    }
    return max_label + 1;
}

std::vector<int> LabeledGraph::community_members(int community) const {
    std::vector<int> members;
    for (int v = 0; v < n; ++v) {
        if (labels[v] == community) {
            members.push_back(v);
        }
    }
    return members;
}

void validate(const LabeledGraph& g) {
    if (g.n < 0) {
        throw ParameterError("graph: negative vertex count");
    }
    if (static_cast<int>(g.labels.size()) != g.n) {
        throw ParameterError("graph: expected one label per vertex");
    }
    std::set<std::pair<int, int>> seen;
    for (const auto& [u, v] : g.edges) {
        if (u == v) {
            throw ParameterError("graph: self-loop at vertex " + std::to_string(u));
        }
        if (u < 0 || v < 0 || u >= g.n || v >= g.n) {
            throw ParameterError("graph: edge endpoint out of range");
        }
        auto key = std::minmax(u, v);
        if (!seen.insert(key).second) {
            throw ParameterError("graph: duplicate edge " + std::to_string(key.first) + "," +
                                 std::to_string(key.second));
        }
    }
    // Community ids must be contiguous integers starting at 0.
    const int k = g.num_communities();
    std::vector<bool> present(std::max(k, 0), false);
    for (int c : g.labels) {
        if (c < 0) {
            throw ParameterError("graph: negative community id");
        }
        present[c] = true;
    }
    for (int c = 0; c < k; ++c) {
        if (!present[c]) {
            throw ParameterError("graph: community ids not contiguous, missing " + std::to_string(c));
        }
    }
}

void validate(const PartitionSpec& spec) {
    if (spec.n <= 0 || spec.num_communities <= 0) {
        throw ParameterError("partition spec: n and num_communities must be positive");
    }
    if (spec.n % spec.num_communities != 0) {
        throw ParameterError("partition spec: n must be divisible by num_communities");
    }
    if (spec.z_out < 0.0 || spec.z_out > spec.avg_degree) {
        throw ParameterError("partition spec: require 0 <= z_out <= avg_degree");
    }
}

LabeledGraph generate_planted_partition(const PartitionSpec& spec) {
    validate(spec);
    const int order = spec.n / spec.num_communities;
    const double z_in = spec.avg_degree - spec.z_out;
    const double p_in = order > 1 ? z_in / (order - 1) : 0.0;
    const double p_out = spec.n > order ? spec.z_out / (spec.n - order) : 0.0;
    if (p_in > 1.0 || p_out > 1.0) {
        throw ParameterError("partition spec: implied edge probability exceeds 1");
    }

    LabeledGraph g;
    g.n = spec.n;
    g.labels.resize(spec.n);
    for (int v = 0; v < spec.n; ++v) {
        g.labels[v] = v / order;
    }
    std::mt19937_64 rng(spec.seed);
    for (int u = 0; u < spec.n; ++u) {
        for (int v = u + 1; v < spec.n; ++v) {
            const double p = g.labels[u] == g.labels[v] ? p_in : p_out;
            if (uniform_double(rng) < p) {
                g.edges.emplace_back(u, v);
            }
        }
    }
    return g;
}

namespace {

// Parses "a,b" into two ints, rejecting anything else on the line.
std::pair<int, int> parse_int_pair(const std::string& line, const char* what, int line_no) {
    const auto fail = [&](const char* why) -> std::pair<int, int> {
        throw DataError(std::string(what) + " line " + std::to_string(line_no) + ": " + why +
                        " in \"" + line + "\"");
    };
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
        return fail("expected two comma-separated integers");
    }
    int a = 0;
    int b = 0;
    const char* first = line.data();
    auto ra = std::from_chars(first, first + comma, a);
    if (ra.ec != std::errc{} || ra.ptr != first + comma) {
        return fail("bad first field");
    }
    const char* second = line.data() + comma + 1;
    const char* end = line.data() + line.size();
    auto rb = std::from_chars(second, end, b);
    if (rb.ec != std::errc{} || rb.ptr != end) {
        return fail("bad second field");
    }
    return {a, b};
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string line;
    std::istringstream in(text);
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        lines.push_back(line);
    }
    return lines;
}

}  // namespace

LabeledGraph load_edge_list(const std::string& edges_csv, const std::string& labels_csv) {
    LabeledGraph g;

    const auto label_lines = split_lines(labels_csv);
    std::vector<std::pair<int, int>> vertex_labels;
    int line_no = 0;
    for (const auto& line : label_lines) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        vertex_labels.push_back(parse_int_pair(line, "label list", line_no));
    }
    g.n = static_cast<int>(vertex_labels.size());
    g.labels.assign(g.n, -1);
    line_no = 0;
    for (const auto& [v, c] : vertex_labels) {
        ++line_no;
        if (v < 0 || v >= g.n) {
            throw DataError("label list line " + std::to_string(line_no) + ": vertex " +
                            std::to_string(v) + " out of range for " + std::to_string(g.n) +
                            " labeled vertices");
        }
        if (g.labels[v] != -1) {
            throw DataError("label list line " + std::to_string(line_no) + ": duplicate label for vertex " +
                            std::to_string(v));
        }
        g.labels[v] = c;
    }
    for (int v = 0; v < g.n; ++v) {
        if (g.labels[v] == -1) {
            throw DataError("label list: missing label for vertex " + std::to_string(v));
        }
    }

    const auto edge_lines = split_lines(edges_csv);
    std::set<std::pair<int, int>> seen;
    line_no = 0;
    for (const auto& line : edge_lines) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        auto [u, v] = parse_int_pair(line, "edge list", line_no);
        if (u == v) {
            throw DataError("edge list line " + std::to_string(line_no) + ": self-loop " +
                            std::to_string(u) + "," + std::to_string(v));
        }
        if (u < 0 || v < 0 || u >= g.n || v >= g.n) {
            throw DataError("edge list line " + std::to_string(line_no) + ": vertex out of range in " +
                            std::to_string(u) + "," + std::to_string(v));
        }
        const auto key = std::minmax(u, v);
        if (!seen.insert(key).second) {
            throw DataError("edge list line " + std::to_string(line_no) + ": duplicate edge " +
                            std::to_string(u) + "," + std::to_string(v));
        }
    }
    g.edges.assign(seen.begin(), seen.end());

    try {
        validate(g);
    } catch (const ParameterError& e) {
        throw DataError(std::string("graph files inconsistent: ") + e.what());
    }
    return g;
}

std::string save_edge_list(const LabeledGraph& g) {
    auto edges = g.edges;
    for (auto& [u, v] : edges) {
        if (u > v) {
            std::swap(u, v);
        }
    }
    std::sort(edges.begin(), edges.end());
    std::string out;
    for (const auto& [u, v] : edges) {
        out += std::to_string(u);
        out += ',';
        out += std::to_string(v);
        out += '\n';
    }
    return out;
}

std::string save_labels(const LabeledGraph& g) {
    std::string out;
    for (int v = 0; v < g.n; ++v) {
        out += std::to_string(v);
        out += ',';
        out += std::to_string(g.labels[v]);
        out += '\n';
    }
    return out;
}

std::string graph_to_json_string(const LabeledGraph& g) {
    nlohmann::json j;
    j["n"] = g.n;
    auto edges = g.edges;
    std::sort(edges.begin(), edges.end());
    j["edges"] = nlohmann::json::array();
    for (const auto& [u, v] : edges) {
        j["edges"].push_back({u, v});
    }
    j["labels"] = g.labels;
    return j.dump(2) + "\n";
}

LabeledGraph graph_from_json_string(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("graph json: ") + e.what());
    }
    LabeledGraph g;
    try {
        g.n = j.at("n").get<int>();
        for (const auto& e : j.at("edges")) {
            g.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
        }
        g.labels = j.at("labels").get<std::vector<int>>();
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("graph json: ") + e.what());
    }
    try {
        validate(g);
    } catch (const ParameterError& e) {
        throw DataError(std::string("graph json inconsistent: ") + e.what());
    }
    return g;
}

DegreeStats degree_stats(const LabeledGraph& g) {
    DegreeStats stats;
    const int k = g.num_communities();
    stats.intra_mean.assign(k, 0.0);
    stats.inter_mean.assign(k, 0.0);
    if (g.n == 0) {
        return stats;
    }
    std::vector<int> community_size(k, 0);
    for (int c : g.labels) {
        ++community_size[c];
    }
    std::vector<long long> intra_ends(k, 0);
    std::vector<long long> inter_ends(k, 0);
    for (const auto& [u, v] : g.edges) {
        if (g.labels[u] == g.labels[v]) {
            intra_ends[g.labels[u]] += 2;
        } else {
            ++inter_ends[g.labels[u]];
            ++inter_ends[g.labels[v]];
        }
    }
    stats.mean_degree = 2.0 * static_cast<double>(g.edges.size()) / g.n;
    for (int c = 0; c < k; ++c) {
        stats.intra_mean[c] = static_cast<double>(intra_ends[c]) / community_size[c];
        stats.inter_mean[c] = static_cast<double>(inter_ends[c]) / community_size[c];
    }
    return stats;
}

bool is_connected(const LabeledGraph& g) {
    if (g.n <= 1) {
        return true;
    }
    std::vector<std::vector<int>> adj(g.n);
    for (const auto& [u, v] : g.edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    std::vector<bool> visited(g.n, false);
    std::queue<int> frontier;
    frontier.push(0);
    visited[0] = true;
    int reached = 1;
    while (!frontier.empty()) {
        const int u = frontier.front();
        frontier.pop();
        for (int v : adj[u]) {
            if (!visited[v]) {
                visited[v] = true;
                ++reached;
                frontier.push(v);
            }
        }
    }
    return reached == g.n;
}

}  // namespace spikecom
