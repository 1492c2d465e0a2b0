#pragma once

#include "edq/types.hpp"
#include "edq/vertex_set.hpp"

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace edq {

/// The hidden target graph. Simple and undirected; immutable after construction.
class HiddenGraph {
public:
    HiddenGraph() = default;
    /// Throws PreconditionError on self-loops, duplicates or out-of-range endpoints.
    HiddenGraph(std::size_t n, EdgeList edges);

    std::size_t n() const { return n_; }
    std::size_t m() const { return edges_.size(); }
    const EdgeList& edges() const { return edges_; }
    const std::vector<Vertex>& adjacent(Vertex v) const { return adj_[v]; }
    std::size_t degree(Vertex v) const { return adj_[v].size(); }
    bool has_edge(Vertex a, Vertex b) const;

    /// True iff some edge has both endpoints in q. Iterates the edge list.
    bool answer(std::span<const std::uint64_t> q) const;
    bool answer(const VertexSet& q) const { return answer(q.words()); }

    /// Independent cross-check: scans every pair of members of q.
    bool answer_pairwise(const VertexSet& q) const;

    /// Vertices outside s with a neighbour in s.
    VertexSet neighbours(const VertexSet& s) const;

    /// |Gamma({u,v})|, the combined outside neighbourhood of a pair.
    std::size_t pair_neighbourhood(Vertex u, Vertex v) const;

    friend bool operator==(const HiddenGraph& a, const HiddenGraph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

private:
    std::size_t n_ = 0;
    EdgeList edges_;
    std::vector<std::vector<Vertex>> adj_;
};

/// "n m" header then m lines "u v" (1-indexed, u < v). '#' lines are comments.
HiddenGraph read_graph(std::istream& in);
HiddenGraph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const HiddenGraph& g);
void write_graph_file(const std::string& path, const HiddenGraph& g);

/// Sorts and deduplicates into canonical order.
EdgeList canonical(EdgeList edges);

} // namespace edq
