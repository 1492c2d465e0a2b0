#pragma once

#include "edq/graph.hpp"
#include "edq/kernels.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace edq {

/// One closed (or open) round: queries stored contiguously, answers filled at close.
struct RoundLog {
    std::vector<std::uint64_t> words;
    std::vector<std::uint8_t> answers;
    std::size_t count = 0;

    kernels::QueryBatch batch(std::size_t words_per_query) const {
        return {words, words_per_query};
    }
};

class OracleSession;

/// Handle for the currently open round. Move-only; closes itself on destruction.
class Round {
public:
    Round(Round&& o) noexcept;
    Round& operator=(Round&&) = delete;
    Round(const Round&) = delete;
    ~Round();

    void submit(const VertexSet& q);
    void submit(std::span<const std::uint64_t> words);
    /// Appends an empty query and returns its storage. Valid until the next submit.
    std::span<std::uint64_t> emplace();

    std::size_t size() const;
    std::size_t index() const { return index_; } // 1-based
    bool closed() const { return closed_; }

    /// Reveals all answers of the round at once.
    std::span<const std::uint8_t> close();
    bool answer(std::size_t i) const;
    std::span<const std::uint8_t> answers() const;
    /// Query i of this round.
    std::span<const std::uint64_t> query(std::size_t i) const;
    kernels::QueryBatch batch() const;

private:
    friend class OracleSession;
    Round(OracleSession* s, std::size_t index) : session_(s), index_(index) {}
    RoundLog& log() const;

    OracleSession* session_;
    std::size_t index_;
    bool closed_ = false;
};

class OracleSession {
public:
    enum class Mode { round_structured, fully_adaptive };

    explicit OracleSession(const HiddenGraph& g, Mode mode = Mode::round_structured);

    const HiddenGraph& target() const { return *g_; }
    std::size_t n() const { return g_->n(); }
    std::size_t words_per_query() const { return wpq_; }
    Mode mode() const { return mode_; }

    /// Throws ContractViolation when a round is already open or the mode is adaptive.
    Round open_round();

    /// Fully adaptive mode only: one query, answered immediately, logged as its own round.
    bool ask(const VertexSet& q);

    std::size_t current_round() const { return rounds_.size() - (open_ ? 1 : 0); }
    std::size_t query_count() const { return query_count_; }
    const std::vector<RoundLog>& rounds() const { return rounds_; }
    std::vector<std::size_t> round_sizes() const;

private:
    friend class Round;
    void close_open();

    const HiddenGraph* g_;
    Mode mode_;
    std::size_t wpq_;
    std::vector<RoundLog> rounds_;
    bool open_ = false;
    std::size_t query_count_ = 0;
};

/// Single-query oracle.
inline bool answer_query(const HiddenGraph& g, const VertexSet& q) { return g.answer(q); }

} // namespace edq
