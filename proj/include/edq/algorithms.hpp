#pragma once

// Algorithm registry: string ids to runnable algorithms, plus their round budgets.

#include "edq/constants.hpp"
#include "edq/deterministic.hpp"
#include "edq/oracle.hpp"
#include "edq/result.hpp"
#include "edq/transcript.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace edq {

struct AlgorithmSpec {
    std::string id;
    std::size_t m = 0;   // edge bound (ignored by unknown-m and brute-force)
    std::size_t k = 1;   // rounds parameter for unknown-m
    std::size_t w = 0;   // collision parameter for two-round-large-n (0 = default)
    Constants constants;
    const QueryFamily* family = nullptr; // two-round-deterministic
};

const std::vector<std::string>& algorithm_ids();
bool needs_edge_bound(const std::string& id);

/// Round count an algorithm promises for a finished run. `exact` budgets must be met
/// exactly; otherwise `rounds` is an upper bound.
struct RoundBudget {
    std::size_t rounds = 0;
    bool exact = true;
};
RoundBudget round_budget(const AlgorithmSpec& spec, std::size_t n, const LearnResult& r);

LearnResult run_algorithm(const AlgorithmSpec& spec, OracleSession& s, std::uint64_t seed);

/// Default collision parameter of the two-round large-n algorithm.
std::size_t default_w(std::size_t m);

/// Sampled and exhaustively verified two-round family for small (n, m); cached to
/// `cache_path` when given.
QueryFamily verified_two_round_family(std::size_t n, std::size_t m, const Constants& c,
                                      const std::string& cache_path = "");

struct TrialOutcome {
    LearnResult result;
    std::size_t queries = 0;
    std::size_t rounds = 0;
    std::vector<std::size_t> round_sizes;
    bool exact = false;          // output equals the hidden edge set
    bool accounting_ok = false;  // count == sum of rounds == prediction
    bool budget_ok = false;
    double wall_ms = 0.0;
    std::optional<Transcript> transcript;
};

TrialOutcome run_trial(const AlgorithmSpec& spec, const HiddenGraph& g, std::uint64_t seed,
                       bool keep_transcript = false);

} // namespace edq
