#include "edq/oracle.hpp"

#include <algorithm>

namespace edq {

Round::Round(Round&& o) noexcept : session_(o.session_), index_(o.index_), closed_(o.closed_) {
    o.session_ = nullptr;
}

Round::~Round() {
    if (session_ && !closed_) session_->close_open();
}

RoundLog& Round::log() const {
    ensure(session_ != nullptr, "round handle was moved from");
    return session_->rounds_[index_ - 1];
}

void Round::submit(const VertexSet& q) {
    ensure(session_ != nullptr, "round handle was moved from");
    require(q.universe() == session_->n(), "submit: query universe differs from target");
    submit(q.words());
}

void Round::submit(std::span<const std::uint64_t> words) {
    auto slot = emplace();
    require(words.size() == slot.size(), "submit: wrong query width");
    std::copy(words.begin(), words.end(), slot.begin());
}

std::span<std::uint64_t> Round::emplace() {
    ensure(!closed_, "submit to a closed round");
    RoundLog& l = log();
    const std::size_t w = session_->wpq_;
    l.words.resize(l.words.size() + w, 0);
    ++l.count;
    return std::span<std::uint64_t>(l.words).subspan(l.words.size() - w, w);
}

std::size_t Round::size() const { return log().count; }

std::span<const std::uint8_t> Round::close() {
    ensure(!closed_, "round already closed");
    session_->close_open();
    closed_ = true;
    return log().answers;
}

bool Round::answer(std::size_t i) const {
    ensure(closed_, "answer read before close_round");
    const RoundLog& l = log();
    ensure(i < l.count, "answer index out of range");
    return l.answers[i] != 0;
}

std::span<const std::uint8_t> Round::answers() const {
    ensure(closed_, "answers read before close_round");
    return log().answers;
}

std::span<const std::uint64_t> Round::query(std::size_t i) const {
    const RoundLog& l = log();
    ensure(i < l.count, "query index out of range");
    return l.batch(session_->wpq_)[i];
}

kernels::QueryBatch Round::batch() const { return log().batch(session_->wpq_); }

OracleSession::OracleSession(const HiddenGraph& g, Mode mode)
    : g_(&g), mode_(mode), wpq_(words_for(g.n())) {}

Round OracleSession::open_round() {
    ensure(mode_ == Mode::round_structured, "open_round in fully adaptive mode");
    ensure(!open_, "open_round while another round is open");
    rounds_.emplace_back();
    open_ = true;
    return Round(this, rounds_.size());
}

void OracleSession::close_open() {
    RoundLog& l = rounds_.back();
    l.answers.assign(l.count, 0);
    kernels::answer_queries(*g_, l.batch(wpq_), l.answers);
    query_count_ += l.count;
    open_ = false;
}

bool OracleSession::ask(const VertexSet& q) {
    ensure(mode_ == Mode::fully_adaptive, "ask is only available in fully adaptive mode");
    require(q.universe() == n(), "ask: query universe differs from target");
    RoundLog l;
    l.words.assign(q.words().begin(), q.words().end());
    l.count = 1;
    l.answers.assign(1, g_->answer(q) ? 1 : 0);
    rounds_.push_back(std::move(l));
    ++query_count_;
    return rounds_.back().answers[0] != 0;
}

std::vector<std::size_t> OracleSession::round_sizes() const {
    std::vector<std::size_t> s;
    for (const auto& r : rounds_) s.push_back(r.count);
    return s;
}

} // namespace edq
