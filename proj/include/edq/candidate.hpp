#pragma once

#include "edq/kernels.hpp"
#include "edq/types.hpp"
#include "edq/vertex_set.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace edq {

/// The learner's hypothesis H: a symmetric pair relation over [n] with degrees.
class CandidateEdgeSet {
public:
    CandidateEdgeSet() = default;
    /// Empty relation.
    explicit CandidateEdgeSet(std::size_t n);
    /// All binom(n,2) pairs.
    static CandidateEdgeSet complete(std::size_t n);

    std::size_t n() const { return n_; }
    bool contains(Vertex u, Vertex v) const { return u != v && test_bit(row(u), v); }
    void insert(Vertex u, Vertex v);
    void remove(Vertex u, Vertex v);
    std::size_t degree(Vertex v) const { return degree_[v]; }
    std::size_t pair_count() const;

    std::span<const std::uint64_t> row(Vertex v) const {
        return std::span<const std::uint64_t>(bits_).subspan(v * wpr_, wpr_);
    }
    VertexSet neighbours(Vertex v) const { return VertexSet::from_words(n_, row(v)); }

    /// Removes every pair inside every query answered NO.
    void apply_no_queries(kernels::QueryBatch batch, std::span<const std::uint8_t> answers);

    /// Pairs in canonical order.
    EdgeList pairs() const;

    /// Checks symmetry, empty diagonal and degree consistency.
    bool consistent() const;

private:
    void refresh_degrees();

    std::size_t n_ = 0;
    std::size_t wpr_ = 0;
    std::vector<std::uint64_t> bits_;
    std::vector<std::size_t> degree_;
};

} // namespace edq
