#include "edq/deterministic.hpp"
#include "edq/known_m.hpp"
#include "edq/random.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace edq {

namespace {

void set_bit(std::span<std::uint64_t> q, Vertex v) { q[v >> 6] |= std::uint64_t{1} << (v & 63); }

void or_into(std::span<std::uint64_t> q, const VertexSet& s) {
    const auto w = s.words();
    for (std::size_t i = 0; i < q.size(); ++i) q[i] |= w[i];
}

/// Disjunct matrices are pure functions of (cols, d); the cache only saves rebuilding.
const DisjunctMatrix& cached_disjunct(std::size_t cols, std::size_t d) {
    static std::mutex mu;
    static std::map<std::pair<std::size_t, std::size_t>, DisjunctMatrix> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({cols, d});
    if (it == cache.end()) {
        auto dm = build_disjunct_matrix(cols, d, hash_combine(cols, d));
        ensure(dm.verified, "disjunct matrix failed verification");
        it = cache.emplace(std::pair{cols, d}, std::move(dm)).first;
    }
    return it->second;
}

} // namespace

LearnResult two_round_deterministic(OracleSession& s, const QueryFamily& family) {
    require(family.n == s.n(), "two_round_deterministic: family built for another n");
    require(family.verified, "two_round_deterministic: family is not verified");
    LearnResult out;
    auto r1 = s.open_round();
    for (const auto& q : family.queries) r1.submit(q);
    r1.close();
    out.predict(family.queries.size());
    CandidateEdgeSet H = CandidateEdgeSet::complete(s.n());
    H.apply_no_queries(r1.batch(), r1.answers());
    const EdgeList pairs = H.pairs();
    ensure(pairs.size() <= 2 * family.m, "verified family left more than 2m pairs");
    auto r2 = s.open_round();
    for (const Edge& e : pairs) r2.submit(VertexSet::of(s.n(), {e.u, e.v}));
    r2.close();
    out.predict(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i)
        if (r2.answer(i)) out.edges.push_back(pairs[i]);
    return out;
}

LearnResult brute_force_learn(OracleSession& s) {
    LearnResult out;
    const std::size_t n = s.n();
    EdgeList pairs;
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
    auto round = s.open_round();
    for (const Edge& e : pairs) {
        auto q = round.emplace();
        set_bit(q, e.u);
        set_bit(q, e.v);
    }
    round.close();
    out.predict(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i)
        if (round.answer(i)) out.edges.push_back(pairs[i]);
    return out;
}

// ---------------------------------------------------------------- fallback

FallbackPlan plan_fallback(std::size_t n, std::size_t m) {
    FallbackPlan best;
    best.brute = true;
    best.queries = n * (n - 1) / 2;
    if (m == 0 || n < 3) return best;
    for (std::size_t k = 2; k <= 64; ++k) {
        const std::size_t rows = 2 * m * (k - 1) + 1;
        std::size_t q = rows;
        for (;; ++q) {
            if (!is_prime(q)) continue;
            unsigned __int128 cap = 1;
            for (std::size_t i = 0; i < k; ++i) cap *= q;
            if (cap >= n) break;
        }
        const std::size_t queries = rows * (q + q * (q - 1) / 2);
        if (queries < best.queries) best = {false, q, k, rows, queries};
        if (q == rows) break; // larger k only adds rows
    }
    return best;
}

LearnResult nonadaptive_fallback(OracleSession& s, std::size_t m) {
    LearnResult out;
    if (degenerate_empty(s, m, out)) return out;
    const std::size_t n = s.n();
    const FallbackPlan plan = plan_fallback(n, m);
    if (plan.brute) {
        out = brute_force_learn(s);
        out.notes.push_back("fallback used all pair queries");
        return out;
    }
    const auto sym = rs_entries(n, plan.q, plan.k, plan.rows);
    auto round = s.open_round();
    for (std::size_t r = 0; r < plan.rows; ++r) {
        std::vector<VertexSet> cls(plan.q, VertexSet(n));
        for (std::size_t v = 0; v < n; ++v) cls[sym[r * n + v]].insert(static_cast<Vertex>(v));
        for (std::size_t a = 0; a < plan.q; ++a) {
            round.submit(cls[a]);
            for (std::size_t b = a + 1; b < plan.q; ++b) {
                auto q = round.emplace();
                or_into(q, cls[a]);
                or_into(q, cls[b]);
            }
        }
    }
    round.close();
    out.predict(plan.queries);
    CandidateEdgeSet H = CandidateEdgeSet::complete(n);
    H.apply_no_queries(round.batch(), round.answers());
    out.edges = H.pairs();
    ensure(out.edges.size() <= m, "fallback decoded more than m edges");
    return out;
}

// ---------------------------------------------------------------- five rounds

LearnResult five_round_deterministic(OracleSession& s, std::size_t m) {
    require(m >= 1, "five_round_deterministic: m must be positive");
    const std::size_t n = s.n();
    require(n >= 2, "five_round_deterministic: n must be at least 2");
    LearnResult out;
    const PartitionMatrix pm = build_partition_matrix(n, m);
    ensure(agreement_bound_holds(pm, m), "partition matrix violates the agreement bound");
    const std::size_t w = pm.alphabet;

    // Round 1: S_{r,j} for every row and symbol.
    auto r1 = s.open_round();
    for (std::size_t r = 0; r < pm.rows; ++r)
        for (std::size_t j = 0; j < w; ++j) {
            auto q = r1.emplace();
            for (std::size_t v = 0; v < n; ++v)
                if (pm.at(r, v) == j) set_bit(q, static_cast<Vertex>(v));
        }
    r1.close();
    out.predict(w * pm.rows);
    std::size_t row = pm.rows;
    for (std::size_t r = 0; r < pm.rows && row == pm.rows; ++r) {
        bool quiet = true;
        for (std::size_t j = 0; j < w && quiet; ++j) quiet = !r1.answer(r * w + j);
        if (quiet) row = r;
    }
    ensure(row < pm.rows, "no row of the partition matrix separates every edge");
    std::vector<std::vector<Vertex>> cells(w);
    std::vector<VertexSet> cell_sets(w, VertexSet(n));
    for (std::size_t v = 0; v < n; ++v) {
        cells[pm.at(row, v)].push_back(static_cast<Vertex>(v));
        cell_sets[pm.at(row, v)].insert(static_cast<Vertex>(v));
    }

    // Round 2: cell pairs.
    EdgeList all_cell_pairs;
    auto r2 = s.open_round();
    for (Vertex i = 0; i < w; ++i)
        for (Vertex j = i + 1; j < w; ++j) {
            all_cell_pairs.emplace_back(i, j);
            auto q = r2.emplace();
            or_into(q, cell_sets[i]);
            or_into(q, cell_sets[j]);
        }
    r2.close();
    out.predict(all_cell_pairs.size());
    EdgeList set_edges;
    for (std::size_t k = 0; k < all_cell_pairs.size(); ++k)
        if (r2.answer(k)) set_edges.push_back(all_cell_pairs[k]);
    ensure(set_edges.size() <= m, "more than m set edges");

    // Rounds 3-4: loop learning on each side of each set edge.
    struct Side {
        std::size_t base;
        std::size_t target;
        const DisjunctMatrix* dm;
        std::size_t first;
        std::vector<Vertex> candidates;
        std::size_t confirm_first = 0;
        std::vector<Vertex> endpoints;
    };
    std::vector<Side> sides;
    for (const Edge& se : set_edges) {
        sides.push_back({se.u, se.v, nullptr, 0, {}, 0, {}});
        sides.push_back({se.v, se.u, nullptr, 0, {}, 0, {}});
    }
    auto r3 = s.open_round();
    for (auto& sd : sides) {
        const auto& tgt = cells[sd.target];
        sd.dm = &cached_disjunct(tgt.size(), std::min(m, tgt.size() - 1));
        sd.first = r3.size();
        for (const auto& drow : sd.dm->rows) {
            auto q = r3.emplace();
            or_into(q, cell_sets[sd.base]);
            for_each_bit(drow, [&](Vertex local) { set_bit(q, tgt[local]); });
        }
        out.predict(sd.dm->rows.size());
    }
    r3.close();
    auto r4 = s.open_round();
    for (auto& sd : sides) {
        const auto ans = r3.answers().subspan(sd.first, sd.dm->rows.size());
        for (auto local : comp_decode(*sd.dm, ans)) sd.candidates.push_back(cells[sd.target][local]);
        sd.confirm_first = r4.size();
        for (Vertex x : sd.candidates) {
            auto q = r4.emplace();
            or_into(q, cell_sets[sd.base]);
            set_bit(q, x);
        }
        out.predict(sd.candidates.size());
    }
    r4.close();
    for (auto& sd : sides)
        for (std::size_t i = 0; i < sd.candidates.size(); ++i)
            if (r4.answer(sd.confirm_first + i)) sd.endpoints.push_back(sd.candidates[i]);

    // Round 5: every pair of confirmed endpoints across each set edge.
    EdgeList pairs;
    for (std::size_t k = 0; k + 1 < sides.size(); k += 2)
        for (Vertex a : sides[k + 1].endpoints)
            for (Vertex b : sides[k].endpoints) pairs.emplace_back(a, b);
    auto r5 = s.open_round();
    for (const Edge& e : pairs) {
        auto q = r5.emplace();
        set_bit(q, e.u);
        set_bit(q, e.v);
    }
    r5.close();
    out.predict(pairs.size());
    CandidateEdgeSet result(n);
    for (std::size_t i = 0; i < pairs.size(); ++i)
        if (r5.answer(i)) result.insert(pairs[i].u, pairs[i].v);
    out.edges = result.pairs();
    return out;
}

} // namespace edq
