#include "edq/candidate.hpp"

namespace edq {

CandidateEdgeSet::CandidateEdgeSet(std::size_t n)
    : n_(n), wpr_(words_for(n)), bits_(n * words_for(n), 0), degree_(n, 0) {}

CandidateEdgeSet CandidateEdgeSet::complete(std::size_t n) {
    CandidateEdgeSet h(n);
    for (std::size_t v = 0; v < n; ++v) {
        std::uint64_t* row = h.bits_.data() + v * h.wpr_;
        for (std::size_t u = 0; u < n; ++u)
            if (u != v) row[u >> 6] |= std::uint64_t{1} << (u & 63);
        h.degree_[v] = n - 1;
    }
    return h;
}

void CandidateEdgeSet::insert(Vertex u, Vertex v) {
    require(u != v && u < n_ && v < n_, "CandidateEdgeSet::insert: bad pair");
    if (contains(u, v)) return;
    bits_[u * wpr_ + (v >> 6)] |= std::uint64_t{1} << (v & 63);
    bits_[v * wpr_ + (u >> 6)] |= std::uint64_t{1} << (u & 63);
    ++degree_[u];
    ++degree_[v];
}

void CandidateEdgeSet::remove(Vertex u, Vertex v) {
    if (u == v || !contains(u, v)) return;
    bits_[u * wpr_ + (v >> 6)] &= ~(std::uint64_t{1} << (v & 63));
    bits_[v * wpr_ + (u >> 6)] &= ~(std::uint64_t{1} << (u & 63));
    --degree_[u];
    --degree_[v];
}

std::size_t CandidateEdgeSet::pair_count() const {
    std::size_t s = 0;
    for (auto d : degree_) s += d;
    return s / 2;
}

void CandidateEdgeSet::apply_no_queries(kernels::QueryBatch batch,
                                        std::span<const std::uint8_t> answers) {
    require(batch.words_per_query == wpr_, "apply_no_queries: width mismatch");
    kernels::apply_no_queries({bits_, n_, wpr_}, batch, answers);
    refresh_degrees();
}

void CandidateEdgeSet::refresh_degrees() {
    for (std::size_t v = 0; v < n_; ++v) degree_[v] = popcount(row(static_cast<Vertex>(v)));
}

EdgeList CandidateEdgeSet::pairs() const {
    EdgeList out;
    for (std::size_t u = 0; u < n_; ++u)
        for_each_bit(row(static_cast<Vertex>(u)), [&](Vertex v) {
            if (v > u) out.emplace_back(static_cast<Vertex>(u), v);
        });
    return out;
}

bool CandidateEdgeSet::consistent() const {
    for (std::size_t u = 0; u < n_; ++u) {
        const auto r = row(static_cast<Vertex>(u));
        if (test_bit(r, static_cast<Vertex>(u))) return false;
        if (popcount(r) != degree_[u]) return false;
        bool sym = true;
        for_each_bit(r, [&](Vertex v) { sym = sym && test_bit(row(v), static_cast<Vertex>(u)); });
        if (!sym) return false;
    }
    return true;
}

} // namespace edq
