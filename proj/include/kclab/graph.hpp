#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "kclab/rational.hpp"

namespace kclab {

struct Edge {
    int u; // u < v
    int v;
    Rational length; // > 0
};

// Undirected graph with exact positive rational edge lengths. No self loops,
// no parallel edges.
class WeightedGraph {
public:
    WeightedGraph() = default;
    explicit WeightedGraph(int vertex_count);

    int vertex_count() const { return static_cast<int>(labels_.size()); }
    void set_label(int v, std::string label);
    const std::string& label(int v) const;

    void add_edge(int u, int v, Rational length);
    const std::vector<Edge>& edges() const { return edges_; }
    bool has_edge(int u, int v) const;

private:
    void check_vertex(int v) const;
    std::uint64_t edge_key(int u, int v) const;

    std::vector<std::string> labels_;
    std::vector<Edge> edges_;
    std::unordered_set<std::uint64_t> edge_keys_;
};

using Adjacency = std::vector<std::vector<std::pair<int, Rational>>>;
Adjacency build_adjacency(const WeightedGraph& g);

// Exact Dijkstra; unreachable vertices come back as nullopt.
std::vector<std::optional<Rational>> shortest_paths(const WeightedGraph& g, int source);
std::vector<std::optional<Rational>> shortest_paths(const Adjacency& adj, int source);

// Dense symmetric matrix of exact distances with zero diagonal.
class Metric {
public:
    Metric() = default;
    explicit Metric(int point_count);

    int point_count() const { return n_; }
    const Rational& dist(int u, int v) const { return d_[static_cast<std::size_t>(u) * n_ + v]; }
    void set_dist(int u, int v, Rational value);

private:
    int n_ = 0;
    std::vector<Rational> d_;
};

Metric metric_of(const WeightedGraph& g); // throws DisconnectedGraphError

// Full metric-law check (symmetry, zero diagonal, triangle inequality over
// all triples); meant for tests and debug validation, O(n^3).
std::vector<std::string> validate_metric(const Metric& m);

// Text format: "graph <V> <E>", V lines "vertex <id> <label>" with ids
// 0..V-1 in order, E lines "edge <u> <v> <num>/<den>". Round-trips byte
// for byte.
void write_graph(const WeightedGraph& g, std::ostream& out);
WeightedGraph read_graph(std::istream& in);
void save_graph(const WeightedGraph& g, const std::string& path);
WeightedGraph load_graph(const std::string& path);

} // namespace kclab
