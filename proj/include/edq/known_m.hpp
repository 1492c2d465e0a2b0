#pragma once

// Randomized algorithms that are told an upper bound m on the edge count.

#include "edq/candidate.hpp"
#include "edq/constants.hpp"
#include "edq/oracle.hpp"
#include "edq/random.hpp"
#include "edq/result.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace edq {

struct EliminationParams {
    double p = 0.5;
    double r = 0.0;
    double delta = 0.1;
    std::size_t m = 0;
    std::size_t t = 1;
    bool clamped = false;
    std::string report;

    /// p^2 (1 - r p - m p^2)
    double rate() const { return p * p * (1.0 - r * p - static_cast<double>(m) * p * p); }
};

/// ceil((2 ln n + ln 1/delta) / (p^2 (1 - r p - m p^2))).
std::size_t elimination_repetitions(std::size_t n, std::size_t m, double r, double p, double delta);

/// Validates (p, r) and fills t. When 1 - rp - mp^2 < 1/4 the probability is lowered to
/// the root of rp + mp^2 = 3/4 and the clamp is reported.
EliminationParams make_elimination_params(std::size_t n, std::size_t m, double p, double r,
                                          double delta);

/// One round of t p-random queries over V; starts from all pairs and removes every pair
/// inside a NO-query.
CandidateEdgeSet elimination_round(OracleSession& s, const EliminationParams& ep, Seed seed);

/// Random balanced partition: vertex at shuffled position i goes to cell i mod u.
struct Partition {
    std::vector<std::uint32_t> cell_of;
    std::vector<std::vector<Vertex>> cells;
    std::vector<VertexSet> cell_sets;

    std::size_t size() const { return cells.size(); }
};
Partition partition_vertices(std::size_t n, std::size_t u, std::uint64_t seed);

/// Elimination over the cells of a partition; each cell query is asked as the union
/// of its cells. Returns the hypothesis over cells.
CandidateEdgeSet lifted_elimination_round(OracleSession& s, const EliminationParams& ep,
                                          const Partition& part, Seed seed);

/// Neighbour learner: t queries Q + {v}, Q a p-random subset of an independent set I.
class NeighborLearner {
public:
    NeighborLearner(Vertex v, VertexSet independent, double p, std::size_t t, Seed seed);
    /// p = min(1/m, 1/2), t = ceil(4m (ln n + ln 1/delta)).
    static NeighborLearner with_bound(Vertex v, VertexSet independent, std::size_t m, double delta,
                                      Seed seed);

    std::size_t queries() const { return independent_.empty() ? 0 : t_; }
    void submit(Round& round);
    /// Members of I never seen in a NO-query. Always a superset of the true neighbours in I.
    VertexSet decode(const Round& round) const;

private:
    Vertex v_;
    VertexSet independent_;
    double p_;
    std::size_t t_;
    Seed seed_;
    std::size_t first_ = 0;
};

std::size_t learner_repetitions(std::size_t n, std::size_t m, double delta);

VertexSet learn_neighbors_in_independent_set(OracleSession& s, Vertex v, const VertexSet& I,
                                             std::size_t m, double delta, Seed seed);

struct Structure {
    std::vector<Vertex> W;
    std::vector<VertexSet> I; // I[k] belongs to W[k]
    EdgeList E_W;
    EdgeList U;
};

/// W = {deg_H > r/2}; I_w = neighbours u of w with deg_H(u) <= r/8 whose common
/// neighbours with w all have degree > r + 1; E_W = w-I_w pairs; U = E(H) \ E_W.
Structure classify_structure(const CandidateEdgeSet& H, double r);

struct NominalParams {
    double p;
    double r;
};
/// p = m^{-2/3}, r = m^{2/3} / 2.
NominalParams two_round_nominal(std::size_t m);
/// p = 1/(16 sqrt m), r = 8 sqrt m.
NominalParams three_round_nominal(std::size_t m);

LearnResult non_adaptive_mc(OracleSession& s, std::size_t m, std::uint64_t seed,
                            const Constants& c = default_constants());
LearnResult las_vegas_two_round(OracleSession& s, std::size_t m, std::uint64_t seed,
                                const Constants& c = default_constants());
LearnResult two_round_mc(OracleSession& s, std::size_t m, std::uint64_t seed,
                         const Constants& c = default_constants());
/// two_round_mc followed by one pair query per output edge.
LearnResult three_round_lv(OracleSession& s, std::size_t m, std::uint64_t seed,
                           const Constants& c = default_constants());
LearnResult three_round_mc(OracleSession& s, std::size_t m, std::uint64_t seed,
                           const Constants& c = default_constants());
/// three_round_mc followed by one pair query per output edge.
LearnResult four_round_lv(OracleSession& s, std::size_t m, std::uint64_t seed,
                          const Constants& c = default_constants());

LearnResult two_round_large_n(OracleSession& s, std::size_t m, std::size_t w, std::uint64_t seed,
                              const Constants& c = default_constants());
LearnResult three_round_lv_large_n(OracleSession& s, std::size_t m, std::uint64_t seed,
                                   const Constants& c = default_constants());

/// Number of cells used by three_round_lv_large_n: 2 m^4 (2m - 1).
std::size_t lv_large_n_cells(std::size_t m);

/// Handles m = 0: one query on V. Returns true when the caller should stop.
bool degenerate_empty(OracleSession& s, std::size_t m, LearnResult& out);

} // namespace edq
