#pragma once

// Learning without a bound on m: estimate a probe probability, split by degree,
// estimate the heavy vertices' degrees, learn their edges, verify.

#include "edq/candidate.hpp"
#include "edq/constants.hpp"
#include "edq/oracle.hpp"
#include "edq/random.hpp"
#include "edq/result.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace edq {

struct EstimateOutcome {
    bool escalated = false; // "m > M" (or "d_u > M")
    double p = 0.0;         // p' = p_{i0} / 2
    std::size_t level = 0;  // i0
    bool empty_graph = false; // the level-0 query (all of V) answered NO
};

/// Number of levels i with 2^i <= 2^2.5 sqrt(M), i.e. 4^i <= 32 M.
std::size_t estimate_levels(double M);
/// Number of levels i with 2^i <= 16 M.
std::size_t degree_levels(double M);

/// Levels p_i = 2^-i, i < levels; level 0 is a single query, the rest ceil(c ln n) each.
/// With an anchor every query is Q + {anchor}. Selects the first level whose NO-rate
/// strictly exceeds `threshold`.
class LevelProbe {
public:
    LevelProbe(std::size_t n, std::size_t levels, std::size_t per_level, std::optional<Vertex> anchor,
               Seed seed, double threshold);

    std::size_t queries() const { return 1 + (levels_ - 1) * per_level_; }
    void submit(Round& round);
    EstimateOutcome decode(const Round& round) const;

private:
    std::size_t n_, levels_, per_level_;
    std::optional<Vertex> anchor_;
    Seed seed_;
    double threshold_;
    std::size_t first_ = 0;
};

std::size_t per_level_queries(std::size_t n, double c);

/// One round of Estimate with bound M.
EstimateOutcome estimate(OracleSession& s, double M, std::uint64_t seed, const Constants& c = default_constants());
/// One round of EstimateDegree for vertex u with bound M.
EstimateOutcome estimate_degree(OracleSession& s, Vertex u, double M, std::uint64_t seed,
                                const Constants& c = default_constants());

/// log^[j] n in base 2, clamped below at 2 for j >= 1; log^[0] n = n.
double iterated_log(double n, std::size_t j);
/// Least j with log^[j] n <= 2 (unclamped iteration).
std::size_t log_star(double n);
/// M_{k-1}, ..., M_0 with M_j = (log^[j] n)^2 and M_0 = top.
std::vector<double> tower_bounds(double n, std::size_t k, double top);

struct KEstimate {
    EstimateOutcome outcome;
    std::size_t rounds = 0;
    std::size_t queries = 0;
};
KEstimate k_estimate(OracleSession& s, std::size_t k, std::uint64_t seed, const Constants& c = default_constants());

struct SplitResult {
    CandidateEdgeSet H;
    std::vector<Vertex> V1;
    std::vector<Vertex> V2;
    std::size_t t = 0;
};
std::size_t split_repetitions(std::size_t n, double p, const Constants& c);
/// One round of t p'-random queries; V1 = {deg_H >= 3/p'}.
SplitResult split(OracleSession& s, double p, std::uint64_t seed, const Constants& c = default_constants());

struct KEstimateDegree {
    std::vector<double> probes; // p'_u per input vertex
    std::size_t rounds = 0;
    std::size_t queries = 0;
};
/// All unresolved vertices share one round per bound; M_0 = n.
KEstimateDegree k_estimate_degree(OracleSession& s, const std::vector<Vertex>& us, std::size_t k,
                                  std::uint64_t seed, const Constants& c = default_constants());

std::size_t find_repetitions(std::size_t n, double p, const Constants& c);
/// One round; removes {u, v} whenever a NO-query Q + {u} contains v. Returns queries asked.
std::size_t find_edges(OracleSession& s, CandidateEdgeSet& H, const std::vector<Vertex>& us,
                       const std::vector<double>& probes, std::uint64_t seed,
                       const Constants& c = default_constants());

struct PipelineMode {
    bool log_star = true;
    std::size_t k = 1; // used when !log_star
};

/// Estimate -> Split -> EstimateDegree -> FindEdges -> verification round. The verification
/// round pair-queries every surviving pair, so the output is always exact; a NO there
/// means the Monte Carlo stages left a false pair and is counted as a fallback.
LearnResult pipeline_unknown_m(OracleSession& s, PipelineMode mode, std::uint64_t seed,
                               const Constants& c = default_constants());

} // namespace edq
