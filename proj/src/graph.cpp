#include "edq/graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace edq {

EdgeList canonical(EdgeList edges) {
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
}

HiddenGraph::HiddenGraph(std::size_t n, EdgeList edges) : n_(n), adj_(n) {
    require(n >= 1, "HiddenGraph: n must be positive");
    for (const Edge& e : edges) {
        require(e.u != e.v, "HiddenGraph: self-loop");
        require(e.v < n, "HiddenGraph: endpoint out of range");
    }
    const std::size_t before = edges.size();
    edges_ = canonical(std::move(edges));
    require(edges_.size() == before, "HiddenGraph: duplicate edge");
    for (const Edge& e : edges_) {
        adj_[e.u].push_back(e.v);
        adj_[e.v].push_back(e.u);
    }
    for (auto& a : adj_) std::sort(a.begin(), a.end());
}

bool HiddenGraph::has_edge(Vertex a, Vertex b) const {
    if (a >= n_ || b >= n_ || a == b) return false;
    const auto& la = adj_[a];
    return std::binary_search(la.begin(), la.end(), b);
}

bool HiddenGraph::answer(std::span<const std::uint64_t> q) const {
    for (const Edge& e : edges_)
        if (test_bit(q, e.u) && test_bit(q, e.v)) return true;
    return false;
}

bool HiddenGraph::answer_pairwise(const VertexSet& q) const {
    const auto mem = q.members();
    for (std::size_t i = 0; i < mem.size(); ++i)
        for (std::size_t j = i + 1; j < mem.size(); ++j)
            if (has_edge(mem[i], mem[j])) return true;
    return false;
}

VertexSet HiddenGraph::neighbours(const VertexSet& s) const {
    require(s.universe() == n_, "neighbours: universe mismatch");
    VertexSet out(n_);
    s.for_each([&](Vertex v) {
        for (Vertex u : adj_[v])
            if (!s.contains(u)) out.insert(u);
    });
    return out;
}

std::size_t HiddenGraph::pair_neighbourhood(Vertex u, Vertex v) const {
    std::vector<Vertex> all;
    for (Vertex x : adj_[u])
        if (x != v) all.push_back(x);
    for (Vertex x : adj_[v])
        if (x != u) all.push_back(x);
    std::sort(all.begin(), all.end());
    return static_cast<std::size_t>(std::unique(all.begin(), all.end()) - all.begin());
}

namespace {

bool next_data_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        return true;
    }
    return false;
}

} // namespace

HiddenGraph read_graph(std::istream& in) {
    std::string line;
    require(next_data_line(in, line), "graph file: missing 'n m' header");
    std::istringstream hs(line);
    long long n = 0, m = 0;
    require(static_cast<bool>(hs >> n >> m) && n >= 1 && m >= 0, "graph file: bad header");
    EdgeList edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (long long i = 0; i < m; ++i) {
        require(next_data_line(in, line), "graph file: fewer edge lines than declared");
        std::istringstream es(line);
        long long u = 0, v = 0;
        require(static_cast<bool>(es >> u >> v), "graph file: bad edge line '" + line + "'");
        require(u >= 1 && v <= n && u < v, "graph file: edge must satisfy 1 <= u < v <= n");
        edges.emplace_back(static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1));
    }
    require(!next_data_line(in, line), "graph file: more edge lines than declared");
    return HiddenGraph(static_cast<std::size_t>(n), std::move(edges));
}

HiddenGraph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    require(static_cast<bool>(in), "cannot open graph file " + path);
    return read_graph(in);
}

void write_graph(std::ostream& out, const HiddenGraph& g) {
    out << g.n() << ' ' << g.m() << '\n';
    for (const Edge& e : g.edges()) out << e.u + 1 << ' ' << e.v + 1 << '\n';
}

void write_graph_file(const std::string& path, const HiddenGraph& g) {
    std::ofstream out(path);
    require(static_cast<bool>(out), "cannot write graph file " + path);
    write_graph(out, g);
}

} // namespace edq
