#pragma once

// Deterministic constructions and the algorithms built on them.

#include "edq/candidate.hpp"
#include "edq/kernels.hpp"
#include "edq/oracle.hpp"
#include "edq/result.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace edq {

// ---------------------------------------------------------------- two-round family

struct QueryFamily {
    std::size_t n = 0;
    std::size_t m = 0;
    std::vector<VertexSet> queries;
    bool sampled = true; // false for constructed families
    std::uint64_t seed = 0;
    double p = 0.0;
    bool verified = false;
    bool degenerate = false; // every query is V (m = 1 with p = 1/m)
};

/// t queries, each vertex included independently with probability p (default 1/m).
QueryFamily sample_two_round_family(std::size_t n, std::size_t m, std::size_t t, std::uint64_t seed,
                                    double p = 0.0);

/// Every pair as its own query.
QueryFamily all_pairs_family(std::size_t n, std::size_t m);

struct CoveringReport {
    bool feasible = true;       // false: refused by the size guard
    bool holds = false;
    double pairs_to_enumerate = 0; // binom(N, m) * binom(N - m, m), N = binom(n, 2)
    EdgeList graph;             // counterexample G (when !holds)
    EdgeList uncovered;         // m non-edges of G no NO-query separates
};

/// Exhaustive check of the covering property over all m-edge graphs G: fewer than m
/// non-edges of G lie only in queries that G answers YES. Sets family.verified.
inline constexpr double kCoveringGuard = 2.0e6; // graphs G enumerated
CoveringReport verify_covering(QueryFamily& family);

/// Tries seeds seed0, seed0+1, ... until a sampled family verifies.
std::optional<QueryFamily> search_two_round_family(std::size_t n, std::size_t m, std::size_t t,
                                                   std::uint64_t seed0, std::size_t tries,
                                                   double p = 0.0);

/// Round 1 asks the family; round 2 confirms every surviving pair.
LearnResult two_round_deterministic(OracleSession& s, const QueryFamily& family);

// ---------------------------------------------------------------- one-or detector

struct OneOrCode {
    std::size_t n = 0;
    std::size_t t = 0;
    /// assignment[v] = bitmask over [2t] with exactly t bits (lexicographic order of t-subsets)
    std::vector<std::uint64_t> assignment;

    std::size_t queries() const { return 2 * t; }
    /// Local vertices in query j.
    std::vector<Vertex> support(std::size_t j) const;
};

OneOrCode build_one_or_code(std::size_t n);

/// Lexicographic rank of a t-subset of [2t] given as a bitmask; nullopt if not weight t.
std::optional<std::uint64_t> subset_rank(std::uint64_t mask, std::size_t t);

struct OneOrDecode {
    enum Kind { empty, vertex, error } kind = empty;
    Vertex v = 0;
};
OneOrDecode decode_one_or(std::span<const std::uint8_t> answers, const OneOrCode& code);

// ---------------------------------------------------------------- partition matrix

struct PartitionMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::size_t alphabet = 0; // w
    std::size_t q = 0;        // prime field size
    std::size_t k = 0;        // message length (polynomial degree < k)
    std::vector<std::uint32_t> entries; // row-major

    std::uint32_t at(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }
};

/// Reed-Solomon evaluation code over the smallest prime q with t = max(1, 2m(k-1)) <= q
/// evaluation points, k = ceil(log_q n). Any two columns agree in at most k-1 <= t/(2m) rows.
PartitionMatrix build_partition_matrix(std::size_t n, std::size_t m);
kernels::AgreementResult max_agreement(const PartitionMatrix& pm);
bool agreement_bound_holds(const PartitionMatrix& pm, std::size_t m);

/// Entries of column v: the base-q digits of v as polynomial coefficients, evaluated at
/// points 0..rows-1.
std::vector<std::uint32_t> rs_entries(std::size_t n, std::size_t q, std::size_t k, std::size_t rows);
bool is_prime(std::size_t x);

// ---------------------------------------------------------------- disjunct matrix

struct DisjunctMatrix {
    std::size_t cols = 0;
    std::size_t d = 0;
    std::uint64_t seed = 0;
    std::vector<std::vector<std::uint64_t>> rows; // bitsets over cols
    bool verified = false;
    bool identity = false;
};

/// Seeded random rows, grown until d-disjunctness verifies; identity when the guard trips.
DisjunctMatrix build_disjunct_matrix(std::size_t cols, std::size_t d, std::uint64_t seed);
/// Exhaustive: every column has a row avoiding any d other columns.
std::optional<bool> verify_disjunct(const DisjunctMatrix& dm);
/// Columns that appear in no negative row.
std::vector<std::size_t> comp_decode(const DisjunctMatrix& dm, std::span<const std::uint8_t> answers);

// ---------------------------------------------------------------- algorithms

LearnResult five_round_deterministic(OracleSession& s, std::size_t m);

/// Plan of the one-round fallback: rows of an RS code, queries are the vertices whose
/// symbol lies in a one- or two-element symbol set. brute = all pair queries.
struct FallbackPlan {
    bool brute = false;
    std::size_t q = 0;
    std::size_t k = 0;
    std::size_t rows = 0;
    std::size_t queries = 0;
};
FallbackPlan plan_fallback(std::size_t n, std::size_t m);
LearnResult nonadaptive_fallback(OracleSession& s, std::size_t m);

/// One pair query per vertex pair in a single round.
LearnResult brute_force_learn(OracleSession& s);

} // namespace edq
