#pragma once

// Data-parallel inner loops. Every kernel has a serial reference in
// kernels::serial and an OpenMP version in kernels::omp with identical
// results; the unqualified entry points dispatch between them.

#include "edq/graph.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace edq::kernels {

/// Contiguous batch of equally sized packed queries.
struct QueryBatch {
    std::span<const std::uint64_t> words;
    std::size_t words_per_query = 0;

    std::size_t size() const { return words_per_query == 0 ? 0 : words.size() / words_per_query; }
    std::span<const std::uint64_t> operator[](std::size_t i) const {
        return words.subspan(i * words_per_query, words_per_query);
    }
};

/// Symmetric boolean relation over [0, universe) stored row-major.
struct PairMatrixView {
    std::span<std::uint64_t> rows;
    std::size_t universe = 0;
    std::size_t words_per_row = 0;
};

struct CoveringCounterexample {
    std::vector<std::size_t> graph_pairs;     // indices into the pair list, ascending
    std::vector<std::size_t> uncovered_pairs; // first m uncovered non-edges
};

struct AgreementResult {
    std::size_t max_agreement = 0;
    std::size_t col_a = 0;
    std::size_t col_b = 0;
};

namespace serial {
void answer_queries(const HiddenGraph& g, QueryBatch batch, std::span<std::uint8_t> out);
void apply_no_queries(PairMatrixView h, QueryBatch batch, std::span<const std::uint8_t> answers);
std::vector<std::uint64_t> independent_set_profile(const HiddenGraph& g);
std::optional<CoveringCounterexample> find_uncovered(
    const std::vector<std::vector<std::uint64_t>>& cover, std::size_t m);
AgreementResult max_column_agreement(std::span<const std::uint32_t> entries, std::size_t rows,
                                     std::size_t cols);
} // namespace serial

namespace omp {
void answer_queries(const HiddenGraph& g, QueryBatch batch, std::span<std::uint8_t> out);
void apply_no_queries(PairMatrixView h, QueryBatch batch, std::span<const std::uint8_t> answers);
std::vector<std::uint64_t> independent_set_profile(const HiddenGraph& g);
std::optional<CoveringCounterexample> find_uncovered(
    const std::vector<std::vector<std::uint64_t>>& cover, std::size_t m);
AgreementResult max_column_agreement(std::span<const std::uint32_t> entries, std::size_t rows,
                                     std::size_t cols);
} // namespace omp

/// answers[i] = 1 iff some edge of g lies inside query i.
void answer_queries(const HiddenGraph& g, QueryBatch batch, std::span<std::uint8_t> out);

/// For every query answered 0, clears all pairs inside it from h.
void apply_no_queries(PairMatrixView h, QueryBatch batch, std::span<const std::uint8_t> answers);

/// a[k] = number of independent sets of size k (complete enumeration, n <= 26).
std::vector<std::uint64_t> independent_set_profile(const HiddenGraph& g);

/// cover[e] = bitset of queries containing pair e. Finds the first m-subset G of pairs
/// (lexicographic) leaving at least m other pairs covered only by YES-queries of G.
std::optional<CoveringCounterexample> find_uncovered(
    const std::vector<std::vector<std::uint64_t>>& cover, std::size_t m);

/// Maximum number of rows on which two distinct columns agree. entries is row-major.
AgreementResult max_column_agreement(std::span<const std::uint32_t> entries, std::size_t rows,
                                     std::size_t cols);

} // namespace edq::kernels
