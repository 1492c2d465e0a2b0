#include "edq/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <limits>

namespace edq::kernels {

namespace {

constexpr std::size_t kParallelGrain = 1u << 12;

bool use_parallel(std::size_t work) {
    return work >= kParallelGrain && !omp_in_parallel() && omp_get_max_threads() > 1;
}

void check_profile_size(const HiddenGraph& g) {
    require(g.n() <= 26, "independent_set_profile: n must be <= 26");
}

std::vector<std::uint32_t> adjacency_masks(const HiddenGraph& g) {
    std::vector<std::uint32_t> adj(g.n(), 0);
    for (const Edge& e : g.edges()) {
        adj[e.u] |= 1u << e.v;
        adj[e.v] |= 1u << e.u;
    }
    return adj;
}

bool independent_mask(const std::vector<std::uint32_t>& adj, std::uint32_t mask) {
    std::uint32_t rest = mask;
    while (rest) {
        const int v = std::countr_zero(rest);
        if (adj[static_cast<std::size_t>(v)] & mask) return false;
        rest &= rest - 1;
    }
    return true;
}

// Depth-first enumeration of combinations extending `chosen`, in lexicographic order.
struct CoverSearch {
    const std::vector<std::vector<std::uint64_t>>& cover;
    std::size_t m;
    std::size_t tw;

    bool covered_by(const std::vector<std::uint64_t>& c, const std::vector<std::uint64_t>& u) const {
        for (std::size_t w = 0; w < tw; ++w)
            if (c[w] & ~u[w]) return false;
        return true;
    }

    std::optional<CoveringCounterexample> check(const std::vector<std::size_t>& chosen,
                                                const std::vector<std::uint64_t>& uni) const {
        CoveringCounterexample cx;
        std::size_t k = 0;
        for (std::size_t e = 0; e < cover.size() && cx.uncovered_pairs.size() < m; ++e) {
            if (k < chosen.size() && chosen[k] == e) {
                ++k;
                continue;
            }
            if (covered_by(cover[e], uni)) cx.uncovered_pairs.push_back(e);
        }
        if (cx.uncovered_pairs.size() < m) return std::nullopt;
        cx.graph_pairs = chosen;
        return cx;
    }

    std::optional<CoveringCounterexample> extend(std::vector<std::size_t>& chosen,
                                                 const std::vector<std::uint64_t>& uni) const {
        if (chosen.size() == m) return check(chosen, uni);
        const std::size_t start = chosen.back() + 1;
        const std::size_t remaining = m - chosen.size();
        for (std::size_t e = start; e + remaining <= cover.size(); ++e) {
            std::vector<std::uint64_t> next = uni;
            for (std::size_t w = 0; w < tw; ++w) next[w] |= cover[e][w];
            chosen.push_back(e);
            auto r = extend(chosen, next);
            chosen.pop_back();
            if (r) return r;
        }
        return std::nullopt;
    }

    std::optional<CoveringCounterexample> from_first(std::size_t first) const {
        std::vector<std::size_t> chosen{first};
        return extend(chosen, cover[first]);
    }
};

std::size_t first_count(std::size_t pairs, std::size_t m) {
    return pairs >= m ? pairs - m + 1 : 0;
}

} // namespace

// ---------------------------------------------------------------- serial

namespace serial {

void answer_queries(const HiddenGraph& g, QueryBatch batch, std::span<std::uint8_t> out) {
    const std::size_t count = batch.size();
    for (std::size_t i = 0; i < count; ++i) out[i] = g.answer(batch[i]) ? 1 : 0;
}

void apply_no_queries(PairMatrixView h, QueryBatch batch, std::span<const std::uint8_t> answers) {
    const std::size_t wpr = h.words_per_row;
    for (std::size_t i = 0; i < batch.size(); ++i) {
        if (answers[i]) continue;
        const auto q = batch[i];
        for_each_bit(q, [&](Vertex u) {
            std::uint64_t* row = h.rows.data() + static_cast<std::size_t>(u) * wpr;
            for (std::size_t w = 0; w < wpr; ++w) row[w] &= ~q[w];
        });
    }
}

std::vector<std::uint64_t> independent_set_profile(const HiddenGraph& g) {
    check_profile_size(g);
    const auto adj = adjacency_masks(g);
    std::vector<std::uint64_t> a(g.n() + 1, 0);
    const std::uint64_t total = std::uint64_t{1} << g.n();
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        const auto m32 = static_cast<std::uint32_t>(mask);
        if (independent_mask(adj, m32)) ++a[static_cast<std::size_t>(std::popcount(m32))];
    }
    return a;
}

std::optional<CoveringCounterexample> find_uncovered(
    const std::vector<std::vector<std::uint64_t>>& cover, std::size_t m) {
    require(m >= 1, "find_uncovered: m must be >= 1");
    if (cover.empty()) return std::nullopt;
    const CoverSearch s{cover, m, cover.front().size()};
    for (std::size_t first = 0; first < first_count(cover.size(), m); ++first)
        if (auto r = s.from_first(first)) return r;
    return std::nullopt;
}

AgreementResult max_column_agreement(std::span<const std::uint32_t> entries, std::size_t rows,
                                     std::size_t cols) {
    AgreementResult best;
    bool have = false;
    for (std::size_t a = 0; a < cols; ++a)
        for (std::size_t b = a + 1; b < cols; ++b) {
            std::size_t agree = 0;
            for (std::size_t r = 0; r < rows; ++r)
                agree += entries[r * cols + a] == entries[r * cols + b];
            if (!have || agree > best.max_agreement) {
                best = {agree, a, b};
                have = true;
            }
        }
    return best;
}

} // namespace serial

// ---------------------------------------------------------------- openmp

namespace omp {

void answer_queries(const HiddenGraph& g, QueryBatch batch, std::span<std::uint8_t> out) {
    const auto count = static_cast<std::ptrdiff_t>(batch.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < count; ++i)
        out[static_cast<std::size_t>(i)] = g.answer(batch[static_cast<std::size_t>(i)]) ? 1 : 0;
}

void apply_no_queries(PairMatrixView h, QueryBatch batch, std::span<const std::uint8_t> answers) {
    // Each thread owns the rows of one 64-vertex block, so row updates never race.
    const std::size_t wpr = h.words_per_row;
    const std::size_t count = batch.size();
    const auto blocks = static_cast<std::ptrdiff_t>(words_for(h.universe));
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t blk = 0; blk < blocks; ++blk) {
        const auto b = static_cast<std::size_t>(blk);
        for (std::size_t i = 0; i < count; ++i) {
            if (answers[i]) continue;
            const auto q = batch[i];
            std::uint64_t x = q[b];
            while (x) {
                const std::size_t u = b * 64 + static_cast<std::size_t>(std::countr_zero(x));
                std::uint64_t* row = h.rows.data() + u * wpr;
                for (std::size_t w = 0; w < wpr; ++w) row[w] &= ~q[w];
                x &= x - 1;
            }
        }
    }
}

std::vector<std::uint64_t> independent_set_profile(const HiddenGraph& g) {
    check_profile_size(g);
    const auto adj = adjacency_masks(g);
    const std::size_t width = g.n() + 1;
    const auto total = static_cast<std::int64_t>(std::uint64_t{1} << g.n());
    std::vector<std::uint64_t> a(width, 0);
#pragma omp parallel
    {
        std::vector<std::uint64_t> local(width, 0);
#pragma omp for schedule(static)
        for (std::int64_t mask = 0; mask < total; ++mask) {
            const auto m32 = static_cast<std::uint32_t>(mask);
            if (independent_mask(adj, m32)) ++local[static_cast<std::size_t>(std::popcount(m32))];
        }
#pragma omp critical
        for (std::size_t k = 0; k < width; ++k) a[k] += local[k];
    }
    return a;
}

std::optional<CoveringCounterexample> find_uncovered(
    const std::vector<std::vector<std::uint64_t>>& cover, std::size_t m) {
    require(m >= 1, "find_uncovered: m must be >= 1");
    if (cover.empty()) return std::nullopt;
    const CoverSearch s{cover, m, cover.front().size()};
    const std::size_t firsts = first_count(cover.size(), m);
    std::vector<std::optional<CoveringCounterexample>> found(firsts);
    std::atomic<std::size_t> lowest{std::numeric_limits<std::size_t>::max()};
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t f = 0; f < static_cast<std::ptrdiff_t>(firsts); ++f) {
        const auto first = static_cast<std::size_t>(f);
        if (first > lowest.load(std::memory_order_relaxed)) continue;
        found[first] = s.from_first(first);
        if (found[first]) {
            std::size_t cur = lowest.load();
            while (first < cur && !lowest.compare_exchange_weak(cur, first)) {
            }
        }
    }
    for (auto& r : found)
        if (r) return r;
    return std::nullopt;
}

AgreementResult max_column_agreement(std::span<const std::uint32_t> entries, std::size_t rows,
                                     std::size_t cols) {
    // Column-major copy keeps the inner loop contiguous.
    std::vector<std::uint32_t> colmajor(rows * cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) colmajor[c * rows + r] = entries[r * cols + c];
    std::vector<AgreementResult> per_col(cols);
#pragma omp parallel for schedule(dynamic, 8)
    for (std::ptrdiff_t ai = 0; ai < static_cast<std::ptrdiff_t>(cols); ++ai) {
        const auto a = static_cast<std::size_t>(ai);
        AgreementResult best{0, a, a};
        for (std::size_t b = a + 1; b < cols; ++b) {
            std::size_t agree = 0;
            for (std::size_t r = 0; r < rows; ++r)
                agree += colmajor[a * rows + r] == colmajor[b * rows + r];
            if (best.col_a == best.col_b || agree > best.max_agreement) best = {agree, a, b};
        }
        per_col[a] = best;
    }
    AgreementResult best;
    bool have = false;
    for (const auto& r : per_col) {
        if (r.col_a == r.col_b) continue;
        if (!have || r.max_agreement > best.max_agreement) {
            best = r;
            have = true;
        }
    }
    return best;
}

} // namespace omp

// ---------------------------------------------------------------- dispatch

void answer_queries(const HiddenGraph& g, QueryBatch batch, std::span<std::uint8_t> out) {
    require(out.size() >= batch.size(), "answer_queries: output too small");
    if (use_parallel(batch.size() * (g.m() + 1)))
        omp::answer_queries(g, batch, out);
    else
        serial::answer_queries(g, batch, out);
}

void apply_no_queries(PairMatrixView h, QueryBatch batch, std::span<const std::uint8_t> answers) {
    require(answers.size() >= batch.size(), "apply_no_queries: answers too short");
    if (use_parallel(batch.size() * words_for(h.universe)) && h.universe >= 128)
        omp::apply_no_queries(h, batch, answers);
    else
        serial::apply_no_queries(h, batch, answers);
}

std::vector<std::uint64_t> independent_set_profile(const HiddenGraph& g) {
    if (use_parallel(std::size_t{1} << std::min<std::size_t>(g.n(), 40)))
        return omp::independent_set_profile(g);
    return serial::independent_set_profile(g);
}

std::optional<CoveringCounterexample> find_uncovered(
    const std::vector<std::vector<std::uint64_t>>& cover, std::size_t m) {
    if (use_parallel(cover.size() * cover.size())) return omp::find_uncovered(cover, m);
    return serial::find_uncovered(cover, m);
}

AgreementResult max_column_agreement(std::span<const std::uint32_t> entries, std::size_t rows,
                                     std::size_t cols) {
    if (use_parallel(cols * cols * rows / 2)) return omp::max_column_agreement(entries, rows, cols);
    return serial::max_column_agreement(entries, rows, cols);
}

} // namespace edq::kernels
