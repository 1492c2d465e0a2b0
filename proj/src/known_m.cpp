#include "edq/known_m.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace edq {

namespace {

double ln(double x) { return std::log(x); }

void submit_pair(Round& round, std::size_t n, Vertex a, Vertex b) {
    auto q = round.emplace();
    (void)n;
    q[a >> 6] |= std::uint64_t{1} << (a & 63);
    q[b >> 6] |= std::uint64_t{1} << (b & 63);
}

/// Asks one pair query per edge in a fresh round; returns the pairs answered YES.
EdgeList confirm_pairs(OracleSession& s, const EdgeList& pairs) {
    auto round = s.open_round();
    for (const Edge& e : pairs) submit_pair(round, s.n(), e.u, e.v);
    round.close();
    EdgeList out;
    for (std::size_t i = 0; i < pairs.size(); ++i)
        if (round.answer(i)) out.push_back(pairs[i]);
    return out;
}

} // namespace

bool degenerate_empty(OracleSession& s, std::size_t m, LearnResult& out) {
    if (m != 0) return false;
    auto round = s.open_round();
    round.submit(VertexSet::full(s.n()));
    round.close();
    out.predict(1);
    if (round.answer(0)) {
        out.success = false;
        out.notes.push_back("m=0 but the all-vertex query answered YES");
    }
    return true;
}

std::size_t elimination_repetitions(std::size_t n, std::size_t m, double r, double p, double delta) {
    const double rate = p * p * (1.0 - r * p - static_cast<double>(m) * p * p);
    require(rate > 0.0, "elimination: p^2 (1 - rp - mp^2) must be positive");
    return repetitions(n, delta, rate);
}

EliminationParams make_elimination_params(std::size_t n, std::size_t m, double p, double r,
                                          double delta) {
    require(p > 0.0 && p <= 1.0, "elimination: p must lie in (0,1]");
    require(r >= 0.0, "elimination: r must be non-negative");
    EliminationParams ep;
    ep.p = p;
    ep.r = r;
    ep.delta = delta;
    ep.m = m;
    const double md = static_cast<double>(m);
    if (1.0 - r * p - md * p * p < 0.25) {
        const double clamped = m == 0 ? 0.75 / r : (-r + std::sqrt(r * r + 3.0 * md)) / (2.0 * md);
        std::ostringstream os;
        os << "p clamped from " << p << " to " << clamped << " (1-rp-mp^2 was "
           << 1.0 - r * p - md * p * p << ")";
        ep.report = os.str();
        ep.p = clamped;
        ep.clamped = true;
    }
    ep.t = elimination_repetitions(n, m, ep.r, ep.p, delta);
    return ep;
}

CandidateEdgeSet elimination_round(OracleSession& s, const EliminationParams& ep, Seed seed) {
    const std::size_t n = s.n();
    const VertexSet all = VertexSet::full(n);
    const std::uint64_t thr = probability_threshold(ep.p);
    auto round = s.open_round();
    for (std::size_t i = 1; i <= ep.t; ++i)
        draw_p_random_into(thr, all.words(), seed.key(i), round.emplace());
    round.close();
    CandidateEdgeSet H = CandidateEdgeSet::complete(n);
    H.apply_no_queries(round.batch(), round.answers());
    return H;
}

Partition partition_vertices(std::size_t n, std::size_t u, std::uint64_t seed) {
    require(u >= 1, "partition_vertices: u must be positive");
    require(u <= n, "partition_vertices: more cells than vertices");
    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), Vertex{0});
    CounterRng rng(Seed{seed, stream_id("partition", 0, 0)});
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
    Partition part;
    part.cell_of.assign(n, 0);
    part.cells.assign(u, {});
    for (std::size_t i = 0; i < n; ++i) {
        const auto cell = static_cast<std::uint32_t>(i % u);
        part.cell_of[order[i]] = cell;
        part.cells[cell].push_back(order[i]);
    }
    for (auto& c : part.cells) {
        std::sort(c.begin(), c.end());
        part.cell_sets.push_back(VertexSet::of(n, c));
    }
    return part;
}

CandidateEdgeSet lifted_elimination_round(OracleSession& s, const EliminationParams& ep,
                                          const Partition& part, Seed seed) {
    const std::size_t u = part.size();
    const std::size_t cw = words_for(u);
    const VertexSet all_cells = VertexSet::full(u);
    const std::uint64_t thr = probability_threshold(ep.p);
    std::vector<std::uint64_t> cell_queries(ep.t * cw, 0);
    auto round = s.open_round();
    for (std::size_t i = 0; i < ep.t; ++i) {
        std::span<std::uint64_t> cq(cell_queries.data() + i * cw, cw);
        draw_p_random_into(thr, all_cells.words(), seed.key(i + 1), cq);
        auto q = round.emplace();
        for_each_bit(cq, [&](Vertex c) {
            const auto cs = part.cell_sets[c].words();
            for (std::size_t w = 0; w < q.size(); ++w) q[w] |= cs[w];
        });
    }
    round.close();
    CandidateEdgeSet H = CandidateEdgeSet::complete(u);
    H.apply_no_queries({cell_queries, cw}, round.answers());
    return H;
}

// ---------------------------------------------------------------- neighbour learning

std::size_t learner_repetitions(std::size_t n, std::size_t m, double delta) {
    require(delta > 0.0 && delta < 1.0, "learner: delta must lie in (0,1)");
    const double t = std::ceil(4.0 * static_cast<double>(std::max<std::size_t>(m, 1)) *
                               (ln(static_cast<double>(n)) + ln(1.0 / delta)));
    return std::max<std::size_t>(1, static_cast<std::size_t>(t));
}

NeighborLearner::NeighborLearner(Vertex v, VertexSet independent, double p, std::size_t t,
                                 Seed seed)
    : v_(v), independent_(std::move(independent)), p_(p), t_(t), seed_(seed) {
    require(!independent_.contains(v), "learner: v must lie outside I");
    require(p > 0.0 && p <= 1.0, "learner: p must lie in (0,1]");
}

NeighborLearner NeighborLearner::with_bound(Vertex v, VertexSet independent, std::size_t m,
                                            double delta, Seed seed) {
    const std::size_t n = independent.universe();
    const double p = std::min(1.0 / static_cast<double>(std::max<std::size_t>(m, 1)), 0.5);
    return NeighborLearner(v, std::move(independent), p, learner_repetitions(n, m, delta), seed);
}

void NeighborLearner::submit(Round& round) {
    first_ = round.size();
    if (independent_.empty()) return;
    const std::uint64_t thr = probability_threshold(p_);
    for (std::size_t i = 1; i <= t_; ++i) {
        auto q = round.emplace();
        draw_p_random_into(thr, independent_.words(), seed_.key(i), q);
        q[v_ >> 6] |= std::uint64_t{1} << (v_ & 63);
    }
}

VertexSet NeighborLearner::decode(const Round& round) const {
    VertexSet out = independent_;
    if (out.empty()) return out;
    auto w = out.words();
    for (std::size_t i = 0; i < t_; ++i) {
        if (round.answer(first_ + i)) continue;
        const auto q = round.query(first_ + i);
        for (std::size_t k = 0; k < w.size(); ++k) w[k] &= ~q[k];
    }
    return out;
}

VertexSet learn_neighbors_in_independent_set(OracleSession& s, Vertex v, const VertexSet& I,
                                             std::size_t m, double delta, Seed seed) {
    auto learner = NeighborLearner::with_bound(v, I, m, delta, seed);
    auto round = s.open_round();
    learner.submit(round);
    round.close();
    return learner.decode(round);
}

// ---------------------------------------------------------------- structure

Structure classify_structure(const CandidateEdgeSet& H, double r) {
    Structure st;
    const std::size_t n = H.n();
    for (std::size_t w = 0; w < n; ++w)
        if (2.0 * static_cast<double>(H.degree(static_cast<Vertex>(w))) > r)
            st.W.push_back(static_cast<Vertex>(w));
    CandidateEdgeSet ew(n);
    for (Vertex w : st.W) {
        VertexSet iw(n);
        const auto rw = H.row(w);
        for_each_bit(rw, [&](Vertex u) {
            if (8.0 * static_cast<double>(H.degree(u)) > r) return;
            bool ok = true;
            const auto ru = H.row(u);
            for (std::size_t k = 0; k < rw.size() && ok; ++k) {
                std::uint64_t common = rw[k] & ru[k];
                while (common && ok) {
                    const auto x = static_cast<Vertex>(k * 64 + static_cast<std::size_t>(std::countr_zero(common)));
                    ok = static_cast<double>(H.degree(x)) > r + 1.0;
                    common &= common - 1;
                }
            }
            if (ok) iw.insert(u);
        });
        iw.for_each([&](Vertex u) { ew.insert(w, u); });
        st.I.push_back(std::move(iw));
    }
    st.E_W = ew.pairs();
    for (const Edge& e : H.pairs())
        if (!ew.contains(e.u, e.v)) st.U.push_back(e);
    return st;
}

NominalParams two_round_nominal(std::size_t m) {
    require(m >= 1, "two-round: m must be positive");
    const double c = std::cbrt(static_cast<double>(m));
    return {1.0 / (c * c), c * c / 2.0};
}

NominalParams three_round_nominal(std::size_t m) {
    require(m >= 1, "three-round: m must be positive");
    const double s = std::sqrt(static_cast<double>(m));
    return {1.0 / (16.0 * s), 8.0 * s};
}

// ---------------------------------------------------------------- algorithms

LearnResult non_adaptive_mc(OracleSession& s, std::size_t m, std::uint64_t seed, const Constants& c) {
    LearnResult out;
    if (degenerate_empty(s, m, out)) return out;
    const double md = static_cast<double>(m);
    const auto ep = make_elimination_params(s.n(), m, 1.0 / (2.0 * md), md, c.delta);
    if (ep.clamped) out.notes.push_back(ep.report);
    const auto H = elimination_round(s, ep, Seed{seed, stream_id("non-adaptive-mc", 1, 0)});
    out.edges = H.pairs();
    out.predict(ep.t);
    return out;
}

LearnResult las_vegas_two_round(OracleSession& s, std::size_t m, std::uint64_t seed,
                                const Constants& c) {
    LearnResult out;
    if (degenerate_empty(s, m, out)) return out;
    const double md = static_cast<double>(m);
    const auto ep = make_elimination_params(s.n(), m, 1.0 / (2.0 * md), md, c.delta);
    for (std::size_t attempt = 0;; ++attempt) {
        const std::uint64_t sd = attempt == 0 ? seed : restart_seed(seed, attempt);
        const auto H = elimination_round(s, ep, Seed{sd, stream_id("two-round-lv", 1, 0)});
        out.predict(ep.t);
        if (H.pair_count() > 2 * (m + 1) && attempt < c.max_restarts) {
            ++out.restarts;
            continue;
        }
        const auto pairs = H.pairs();
        out.edges = confirm_pairs(s, pairs);
        out.predict(pairs.size());
        return out;
    }
}

namespace {

struct RoundOneOutcome {
    EliminationParams ep;
    CandidateEdgeSet H;
    Structure st;
};

RoundOneOutcome structured_round_one(OracleSession& s, std::size_t m, NominalParams nom,
                                     std::string_view alg, std::uint64_t seed, const Constants& c,
                                     LearnResult& out) {
    auto ep = make_elimination_params(s.n(), m, nom.p, nom.r, c.delta);
    if (ep.clamped) out.notes.push_back(ep.report);
    auto H = elimination_round(s, ep, Seed{seed, stream_id(alg, 1, 0)});
    out.predict(ep.t);
    auto st = classify_structure(H, nom.r);
    const double md = static_cast<double>(m);
    // |W| <= 8m/r whenever round one succeeded.
    if (static_cast<double>(st.W.size()) * nom.r > 8.0 * md) {
        out.success = false;
        out.notes.push_back("|W| exceeds 8m/r");
    }
    if (static_cast<double>(st.U.size()) * nom.r > md * nom.r + 8.0 * md * md) {
        out.success = false;
        out.notes.push_back("|U| exceeds m + 8m^2/r");
    }
    return {ep, std::move(H), std::move(st)};
}

LearnResult confirmed(OracleSession& s, LearnResult mc) {
    LearnResult out = std::move(mc);
    const EdgeList candidates = out.edges;
    out.edges = confirm_pairs(s, candidates);
    out.predict(candidates.size());
    if (!out.success) out.notes.push_back("first stage reported failure; confirmation repaired it");
    out.success = true;
    return out;
}

} // namespace

LearnResult two_round_mc(OracleSession& s, std::size_t m, std::uint64_t seed, const Constants& c) {
    LearnResult out;
    if (degenerate_empty(s, m, out)) {
        s.open_round().close();
        return out;
    }
    auto one = structured_round_one(s, m, two_round_nominal(m), "two-round-mc", seed, c, out);
    const auto& st = one.st;

    std::vector<NeighborLearner> learners;
    std::vector<Vertex> owners;
    auto round = s.open_round();
    for (std::size_t k = 0; k < st.W.size(); ++k) {
        if (st.I[k].empty()) continue;
        learners.push_back(NeighborLearner::with_bound(
            st.W[k], st.I[k], m, c.delta, Seed{seed, stream_id("two-round-mc", 2, static_cast<std::uint32_t>(k))}));
        owners.push_back(st.W[k]);
        learners.back().submit(round);
        out.predict(learners.back().queries());
    }
    const std::size_t u_first = round.size();
    for (const Edge& e : st.U) submit_pair(round, s.n(), e.u, e.v);
    out.predict(st.U.size());
    round.close();

    CandidateEdgeSet result(s.n());
    for (std::size_t k = 0; k < learners.size(); ++k)
        learners[k].decode(round).for_each([&](Vertex u) { result.insert(owners[k], u); });
    for (std::size_t i = 0; i < st.U.size(); ++i)
        if (round.answer(u_first + i)) result.insert(st.U[i].u, st.U[i].v);
    out.edges = result.pairs();
    return out;
}

LearnResult three_round_lv(OracleSession& s, std::size_t m, std::uint64_t seed, const Constants& c) {
    return confirmed(s, two_round_mc(s, m, seed, c));
}

LearnResult three_round_mc(OracleSession& s, std::size_t m, std::uint64_t seed, const Constants& c) {
    LearnResult out;
    if (degenerate_empty(s, m, out)) {
        s.open_round().close();
        s.open_round().close();
        return out;
    }
    const std::size_t n = s.n();
    auto one = structured_round_one(s, m, three_round_nominal(m), "three-round-mc", seed, c, out);
    const auto& st = one.st;
    const double lnn = ln(static_cast<double>(n));
    const double md = static_cast<double>(m);

    // Round 2: degree probes at q_j = 2^-j; level 0 is the single query I_w + {w}.
    const std::size_t per_level = static_cast<std::size_t>(std::ceil(c.c_deg * lnn));
    const auto log2ceil = [](double x) { return static_cast<std::size_t>(std::ceil(std::log2(x))); };
    const std::size_t top = std::min(log2ceil(4.0 * md), std::max<std::size_t>(1, log2ceil(static_cast<double>(n))));

    struct Probe {
        Vertex w;
        const VertexSet* I;
        std::size_t first;
    };
    std::vector<Probe> probes;
    auto r2 = s.open_round();
    for (std::size_t k = 0; k < st.W.size(); ++k) {
        if (st.I[k].empty()) continue;
        const Vertex w = st.W[k];
        probes.push_back({w, &st.I[k], r2.size()});
        const Seed sd{seed, stream_id("three-round-mc", 2, static_cast<std::uint32_t>(k))};
        for (std::size_t j = 0; j <= top; ++j) {
            const std::size_t count = j == 0 ? 1 : per_level;
            const std::uint64_t thr = probability_threshold(std::ldexp(1.0, -static_cast<int>(j)));
            for (std::size_t i = 0; i < count; ++i) {
                auto q = r2.emplace();
                draw_p_random_into(thr, st.I[k].words(), sd.key(j * per_level + i + 1), q);
                q[w >> 6] |= std::uint64_t{1} << (w & 63);
            }
        }
        out.predict(1 + top * per_level);
    }
    r2.close();

    // Round 3: learners sized by the estimate, overflow pairs, and U pairs.
    std::vector<NeighborLearner> learners;
    std::vector<Vertex> owners;
    EdgeList direct = st.U;
    for (std::size_t k = 0; k < probes.size(); ++k) {
        const Probe& pr = probes[k];
        std::size_t pos = pr.first;
        std::size_t chosen = top + 1;
        for (std::size_t j = 0; j <= top && chosen > top; ++j) {
            const std::size_t count = j == 0 ? 1 : per_level;
            std::size_t no = 0;
            for (std::size_t i = 0; i < count; ++i) no += r2.answer(pos + i) ? 0 : 1;
            pos += count;
            if (static_cast<double>(no) > static_cast<double>(count) / std::exp(1.0)) chosen = j;
        }
        if (chosen == 0) continue; // I_w + {w} answered NO: no neighbour in I_w
        const double dhat = chosen <= top ? std::ldexp(1.0, static_cast<int>(chosen)) : 0.0;
        if (chosen > top || dhat > 32.0 * md) {
            out.success = false;
            out.notes.push_back("degree estimate overflow");
            pr.I->for_each([&](Vertex u) { direct.emplace_back(pr.w, u); });
            continue;
        }
        const double p = std::min(1.0 / dhat, 0.5);
        const auto t = static_cast<std::size_t>(std::ceil(c.c_learn * dhat * (lnn + ln(1.0 / c.delta))));
        learners.emplace_back(pr.w, *pr.I, p, t,
                              Seed{seed, stream_id("three-round-mc", 3, static_cast<std::uint32_t>(k))});
        owners.push_back(pr.w);
    }
    auto r3 = s.open_round();
    for (auto& l : learners) {
        l.submit(r3);
        out.predict(l.queries());
    }
    const std::size_t d_first = r3.size();
    for (const Edge& e : direct) submit_pair(r3, n, e.u, e.v);
    out.predict(direct.size());
    r3.close();

    CandidateEdgeSet result(n);
    for (std::size_t k = 0; k < learners.size(); ++k)
        learners[k].decode(r3).for_each([&](Vertex u) { result.insert(owners[k], u); });
    for (std::size_t i = 0; i < direct.size(); ++i)
        if (r3.answer(d_first + i)) result.insert(direct[i].u, direct[i].v);
    out.edges = result.pairs();
    return out;
}

LearnResult four_round_lv(OracleSession& s, std::size_t m, std::uint64_t seed, const Constants& c) {
    return confirmed(s, three_round_mc(s, m, seed, c));
}

} // namespace edq
