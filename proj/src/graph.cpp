#include "kclab/graph.hpp"

#include <algorithm>
#include <fstream>
#include <queue>
#include <sstream>

#include "kclab/errors.hpp"

namespace kclab {

WeightedGraph::WeightedGraph(int vertex_count) {
    if (vertex_count < 0) throw InvalidInstanceError("negative vertex count");
    labels_.resize(vertex_count);
    for (int v = 0; v < vertex_count; ++v) labels_[v] = "v" + std::to_string(v);
}

void WeightedGraph::check_vertex(int v) const {
    if (v < 0 || v >= vertex_count())
        throw InvalidVertexError("vertex " + std::to_string(v) + " out of range [0, " +
                                 std::to_string(vertex_count()) + ")");
}

std::uint64_t WeightedGraph::edge_key(int u, int v) const {
    return static_cast<std::uint64_t>(u) * static_cast<std::uint64_t>(vertex_count()) +
           static_cast<std::uint64_t>(v);
}

void WeightedGraph::set_label(int v, std::string label) {
    check_vertex(v);
    if (label.empty() || label.find_first_of(" \t\n") != std::string::npos)
        throw FormatError("vertex label must be nonempty without whitespace: '" + label + "'");
    labels_[v] = std::move(label);
}

const std::string& WeightedGraph::label(int v) const {
    check_vertex(v);
    return labels_[v];
}

void WeightedGraph::add_edge(int u, int v, Rational length) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw InvalidInstanceError("self loop at vertex " + std::to_string(u));
    if (length.sign() <= 0)
        throw InvalidInstanceError("edge length must be positive, got " + length.str());
    if (u > v) std::swap(u, v);
    if (!edge_keys_.insert(edge_key(u, v)).second)
        throw InvalidInstanceError("parallel edge {" + std::to_string(u) + "," +
                                   std::to_string(v) + "}");
    edges_.push_back(Edge{u, v, std::move(length)});
}

bool WeightedGraph::has_edge(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    if (u > v) std::swap(u, v);
    return edge_keys_.count(edge_key(u, v)) > 0;
}

Adjacency build_adjacency(const WeightedGraph& g) {
    Adjacency adj(g.vertex_count());
    for (const Edge& e : g.edges()) {
        adj[e.u].emplace_back(e.v, e.length);
        adj[e.v].emplace_back(e.u, e.length);
    }
    return adj;
}

std::vector<std::optional<Rational>> shortest_paths(const WeightedGraph& g, int source) {
    if (source < 0 || source >= g.vertex_count())
        throw InvalidVertexError("source " + std::to_string(source) + " out of range");
    return shortest_paths(build_adjacency(g), source);
}

std::vector<std::optional<Rational>> shortest_paths(const Adjacency& adj, int source) {
    const int n = static_cast<int>(adj.size());
    if (source < 0 || source >= n)
        throw InvalidVertexError("source " + std::to_string(source) + " out of range");

    std::vector<std::optional<Rational>> dist(n);
    std::vector<char> done(n, 0);

    using Item = std::pair<Rational, int>;
    auto later = [](const Item& a, const Item& b) {
        // min-heap on distance; ties resolved toward the smaller vertex id
        if (a.first != b.first) return a.first > b.first;
        return a.second > b.second;
    };
    std::priority_queue<Item, std::vector<Item>, decltype(later)> heap(later);

    dist[source] = Rational(0);
    heap.emplace(Rational(0), source);
    while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (done[u]) continue;
        done[u] = 1;
        for (const auto& [v, len] : adj[u]) {
            if (done[v]) continue;
            Rational nd = d + len;
            if (!dist[v] || nd < *dist[v]) {
                dist[v] = nd;
                heap.emplace(std::move(nd), v);
            }
        }
    }
    return dist;
}

Metric::Metric(int point_count) : n_(point_count) {
    if (point_count < 0) throw InvalidInstanceError("negative point count");
    d_.assign(static_cast<std::size_t>(n_) * n_, Rational(0));
}

void Metric::set_dist(int u, int v, Rational value) {
    d_[static_cast<std::size_t>(u) * n_ + v] = value;
    d_[static_cast<std::size_t>(v) * n_ + u] = std::move(value);
}

Metric metric_of(const WeightedGraph& g) {
    const int n = g.vertex_count();
    if (n == 0) throw InvalidInstanceError("metric of empty graph");
    Adjacency adj = build_adjacency(g);
    Metric m(n);
    for (int s = 0; s < n; ++s) {
        auto row = shortest_paths(adj, s);
        for (int v = 0; v < n; ++v) {
            if (!row[v])
                throw DisconnectedGraphError("vertex " + std::to_string(v) +
                                             " unreachable from " + std::to_string(s));
            if (v > s) m.set_dist(s, v, std::move(*row[v]));
        }
    }
    return m;
}

std::vector<std::string> validate_metric(const Metric& m) {
    std::vector<std::string> violations;
    const int n = m.point_count();
    for (int u = 0; u < n; ++u) {
        if (m.dist(u, u) != Rational(0))
            violations.push_back("nonzero diagonal at " + std::to_string(u));
        for (int v = u + 1; v < n; ++v) {
            if (m.dist(u, v) != m.dist(v, u))
                violations.push_back("asymmetry at (" + std::to_string(u) + "," +
                                     std::to_string(v) + ")");
            if (m.dist(u, v).sign() < 0)
                violations.push_back("negative distance at (" + std::to_string(u) + "," +
                                     std::to_string(v) + ")");
        }
    }
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            for (int w = 0; w < n; ++w)
                if (m.dist(u, w) > m.dist(u, v) + m.dist(v, w)) {
                    violations.push_back("triangle violation at (" + std::to_string(u) + "," +
                                         std::to_string(v) + "," + std::to_string(w) + ")");
                    if (violations.size() > 50) return violations;
                }
    return violations;
}

void write_graph(const WeightedGraph& g, std::ostream& out) {
    out << "graph " << g.vertex_count() << " " << g.edges().size() << "\n";
    for (int v = 0; v < g.vertex_count(); ++v)
        out << "vertex " << v << " " << g.label(v) << "\n";
    for (const Edge& e : g.edges())
        out << "edge " << e.u << " " << e.v << " " << e.length.str() << "\n";
}

namespace {

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

int parse_int(const std::string& s, const char* what) {
    try {
        std::size_t pos = 0;
        int value = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return value;
    } catch (const std::exception&) {
        throw FormatError(std::string("bad ") + what + ": '" + s + "'");
    }
}

std::string next_line(std::istream& in, const char* what) {
    std::string line;
    if (!std::getline(in, line)) throw FormatError(std::string("missing ") + what);
    return line;
}

} // namespace

WeightedGraph read_graph(std::istream& in) {
    auto header = split_ws(next_line(in, "graph header"));
    if (header.size() != 3 || header[0] != "graph")
        throw FormatError("expected 'graph <V> <E>' header");
    const int vcount = parse_int(header[1], "vertex count");
    const int ecount = parse_int(header[2], "edge count");
    if (vcount < 0 || ecount < 0) throw FormatError("negative counts in graph header");

    WeightedGraph g(vcount);
    for (int v = 0; v < vcount; ++v) {
        auto tok = split_ws(next_line(in, "vertex line"));
        if (tok.size() != 3 || tok[0] != "vertex")
            throw FormatError("expected 'vertex <id> <label>'");
        if (parse_int(tok[1], "vertex id") != v)
            throw FormatError("vertex ids must be 0..V-1 in order, got '" + tok[1] + "'");
        g.set_label(v, tok[2]);
    }
    for (int e = 0; e < ecount; ++e) {
        auto tok = split_ws(next_line(in, "edge line"));
        if (tok.size() != 4 || tok[0] != "edge")
            throw FormatError("expected 'edge <u> <v> <num>/<den>'");
        int u = parse_int(tok[1], "edge endpoint");
        int v = parse_int(tok[2], "edge endpoint");
        if (u >= v) throw FormatError("edge endpoints must satisfy u < v");
        try {
            g.add_edge(u, v, Rational::parse_canonical(tok[3]));
        } catch (const InvalidInstanceError& bad) {
            throw FormatError(bad.what());
        } catch (const InvalidVertexError& bad) {
            throw FormatError(bad.what());
        }
    }
    std::string extra;
    if (std::getline(in, extra) && !extra.empty())
        throw FormatError("trailing content after edge list");
    return g;
}

void save_graph(const WeightedGraph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot open '" + path + "' for writing");
    write_graph(g, out);
}

WeightedGraph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open '" + path + "'");
    return read_graph(in);
}

} // namespace kclab
