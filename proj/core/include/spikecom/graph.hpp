#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace spikecom {

// Simple undirected graph with a ground-truth community label per vertex.
// Edges are stored once as (u, v) with u < v, sorted lexicographically.
struct LabeledGraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<int> labels;  // one community id per vertex

    int num_communities() const;
    std::vector<int> community_members(int community) const;
};

// Throws ParameterError unless the structural invariants hold: vertex ids in
// [0, n), no self-loops, no duplicate edges, one label per vertex, community
// ids contiguous from 0.
void validate(const LabeledGraph& g);

// Planted-partition benchmark parameters: n vertices in equal-order
// communities, expected inter-community degree z_out, expected total degree
// avg_degree.
struct PartitionSpec {
    int n = 128;
    int num_communities = 4;
    double z_out = 2.0;
    double avg_degree = 16.0;
    std::uint64_t seed = 1;
};

void validate(const PartitionSpec& spec);

// Samples a planted-partition instance. Vertex v gets label
// v / community_order, so communities are contiguous blocks. Each
// intra-community pair is an edge with probability z_in / (order - 1) and
// each inter-community pair with probability z_out / (n - order), where
// z_in = avg_degree - z_out. Deterministic for a fixed seed.
LabeledGraph generate_planted_partition(const PartitionSpec& spec);

// Edge-list CSV ("u,v" per line, ascending) plus label CSV
// ("vertex,community", one line per vertex). Parse failures throw DataError
// naming the offending line.
LabeledGraph load_edge_list(const std::string& edges_csv, const std::string& labels_csv);
std::string save_edge_list(const LabeledGraph& g);
std::string save_labels(const LabeledGraph& g);

// Single-document bundle {"n": ..., "edges": [[u, v], ...], "labels": [...]}.
std::string graph_to_json_string(const LabeledGraph& g);
LabeledGraph graph_from_json_string(const std::string& text);

struct DegreeStats {
    double mean_degree = 0.0;
    std::vector<double> intra_mean;  // per community, edges inside it
    std::vector<double> inter_mean;  // per community, edges leaving it
};

DegreeStats degree_stats(const LabeledGraph& g);

bool is_connected(const LabeledGraph& g);

}  // namespace spikecom
