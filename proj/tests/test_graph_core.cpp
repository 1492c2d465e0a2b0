#include "edq/candidate.hpp"
#include "edq/generators.hpp"
#include "edq/graph.hpp"
#include "edq/kernels.hpp"
#include "edq/oracle.hpp"
#include "edq/random.hpp"
#include "edq/transcript.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace edq;

namespace {

HiddenGraph path3() { return HiddenGraph(3, {{0, 1}, {1, 2}}); }

VertexSet mask_set(std::size_t n, std::uint64_t mask) {
    VertexSet q(n);
    for (std::size_t v = 0; v < n; ++v)
        if ((mask >> v) & 1) q.insert(static_cast<Vertex>(v));
    return q;
}

} // namespace

TEST(VertexSet, HexRoundTrip) {
    for (std::size_t n : {1u, 5u, 63u, 64u, 65u, 200u}) {
        CounterRng rng(Seed{n, 3});
        VertexSet s(n);
        for (std::size_t v = 0; v < n; ++v)
            if (rng() & 1) s.insert(static_cast<Vertex>(v));
        EXPECT_EQ(VertexSet::from_hex(n, s.to_hex()), s);
        EXPECT_EQ(s.to_hex().size(), (n + 3) / 4);
    }
}

TEST(VertexSet, SetAlgebra) {
    auto a = VertexSet::of(10, {1, 2, 3});
    auto b = VertexSet::of(10, {3, 4});
    EXPECT_EQ((a | b).count(), 4u);
    EXPECT_EQ((a & b).members(), std::vector<Vertex>{3});
    EXPECT_EQ((a - b).members(), (std::vector<Vertex>{1, 2}));
    EXPECT_TRUE(a.intersects(b));
    EXPECT_TRUE(VertexSet::of(10, {2}).subset_of(a));
    EXPECT_THROW(a |= VertexSet(11), PreconditionError);
}

TEST(HiddenGraph, RejectsBadEdges) {
    EXPECT_THROW(HiddenGraph(3, {{1, 1}}), PreconditionError);
    EXPECT_THROW(HiddenGraph(3, {{0, 1}, {1, 0}}), PreconditionError);
    EXPECT_THROW(HiddenGraph(3, {{0, 3}}), PreconditionError);
}

TEST(HiddenGraph, QueryExamples) {
    HiddenGraph single(4, {{0, 1}});
    EXPECT_TRUE(single.answer(VertexSet::of(4, {0, 1, 2})));
    EXPECT_FALSE(single.answer(VertexSet(4)));
    for (Vertex v = 0; v < 4; ++v) EXPECT_FALSE(single.answer(VertexSet::of(4, {v})));
    EXPECT_FALSE(path3().answer(VertexSet::of(3, {0, 2})));
}

TEST(HiddenGraph, PathAllSubsets) {
    // Only {0,2} and the singletons/empty set avoid an edge.
    const auto g = path3();
    std::size_t yes = 0;
    for (std::uint64_t mask = 0; mask < 8; ++mask) {
        const auto q = mask_set(3, mask);
        EXPECT_EQ(g.answer(q), g.answer_pairwise(q));
        yes += g.answer(q);
    }
    EXPECT_EQ(yes, 3u); // {0,1}, {1,2}, {0,1,2}
}

TEST(HiddenGraph, Neighbours) {
    HiddenGraph star(6, {{0, 1}, {0, 2}, {0, 3}});
    EXPECT_EQ(star.neighbours(VertexSet::of(6, {0})).members(), (std::vector<Vertex>{1, 2, 3}));
    EXPECT_TRUE(star.neighbours(VertexSet::full(6)).empty());
    EXPECT_EQ(path3().neighbours(VertexSet::of(3, {0, 2})).members(), std::vector<Vertex>{1});
}

TEST(HiddenGraph, ExhaustiveSmallAgreement) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto g = erdos_renyi_m(9, seed % 12, seed);
        for (std::uint64_t mask = 0; mask < (1u << 9); ++mask) {
            const auto q = mask_set(9, mask);
            ASSERT_EQ(g.answer(q), g.answer_pairwise(q));
        }
    }
}

TEST(HiddenGraph, FileRoundTrip) {
    const auto g = erdos_renyi_m(40, 25, 9);
    std::stringstream ss;
    write_graph(ss, g);
    EXPECT_EQ(read_graph(ss), g);
}

TEST(Oracle, AccountingIdentity) {
    const auto g = path3();
    OracleSession s(g);
    auto r = s.open_round();
    r.submit(VertexSet::of(3, {0, 1}));
    r.submit(VertexSet::of(3, {0, 2}));
    r.submit(VertexSet::full(3));
    const auto ans = r.close();
    ASSERT_EQ(ans.size(), 3u);
    EXPECT_EQ(ans[0], 1);
    EXPECT_EQ(ans[1], 0);
    EXPECT_EQ(ans[2], 1);
    EXPECT_EQ(s.query_count(), 3u);
    EXPECT_EQ(s.current_round(), 1u);
}

TEST(Oracle, EmptyRoundAdvances) {
    const auto g = path3();
    OracleSession s(g);
    auto r = s.open_round();
    EXPECT_TRUE(r.close().empty());
    EXPECT_EQ(s.current_round(), 1u);
    EXPECT_EQ(s.query_count(), 0u);
}

TEST(Oracle, ProtocolViolations) {
    const auto g = path3();
    OracleSession s(g);
    auto r = s.open_round();
    r.submit(VertexSet::of(3, {0}));
    EXPECT_THROW(r.answer(0), ContractViolation); // answers hidden until close
    EXPECT_THROW(s.open_round(), ContractViolation);
    r.close();
    EXPECT_THROW(r.submit(VertexSet::of(3, {1})), ContractViolation);
    EXPECT_THROW(r.close(), ContractViolation);
    EXPECT_THROW(s.ask(VertexSet::of(3, {0})), ContractViolation);
    EXPECT_THROW(s.open_round().submit(VertexSet(4)), PreconditionError);
}

TEST(Oracle, AdaptiveModeLogsSingletonRounds) {
    const auto g = path3();
    OracleSession s(g, OracleSession::Mode::fully_adaptive);
    EXPECT_TRUE(s.ask(VertexSet::full(3)));
    EXPECT_FALSE(s.ask(VertexSet::of(3, {0, 2})));
    EXPECT_EQ(s.round_sizes(), (std::vector<std::size_t>{1, 1}));
    EXPECT_THROW(s.open_round(), ContractViolation);
}

TEST(Oracle, RoundDestructorCloses) {
    const auto g = path3();
    OracleSession s(g);
    {
        auto r = s.open_round();
        r.submit(VertexSet::full(3));
    }
    EXPECT_EQ(s.current_round(), 1u);
    EXPECT_EQ(s.rounds()[0].answers.size(), 1u);
}

TEST(Transcript, RoundTripAndReplay) {
    const auto g = erdos_renyi_m(70, 6, 2);
    OracleSession s(g);
    for (int k = 0; k < 3; ++k) {
        auto r = s.open_round();
        PRandomSchedule sch(0.3, 5 + k, VertexSet::full(70), Seed{9, static_cast<std::uint64_t>(k)});
        for (std::size_t i = 1; i <= sch.t; ++i) r.submit(sch.draw(i));
    }
    auto t = capture(s, "test", 9, 6);
    t.result = g.edges();
    std::stringstream ss;
    write_transcript(ss, t);
    const auto back = read_transcript(ss);
    EXPECT_EQ(back.rounds.size(), 3u);
    EXPECT_EQ(back.query_count(), s.query_count());
    EXPECT_EQ(back.result, g.edges());
    EXPECT_TRUE(replay(back, g));
    bool any_yes = false;
    for (const auto& r : back.rounds)
        for (auto a : r.answers) any_yes = any_yes || a;
    ASSERT_TRUE(any_yes);
    EXPECT_FALSE(replay(back, HiddenGraph(70, {})));
}

TEST(Candidate, NoQueriesRemovePairsInside) {
    auto h = CandidateEdgeSet::complete(10);
    EXPECT_EQ(h.pair_count(), 45u);
    const auto q = VertexSet::of(10, {1, 2, 3});
    const std::uint8_t no = 0;
    h.apply_no_queries({q.words(), q.words().size()}, std::span<const std::uint8_t>(&no, 1));
    EXPECT_EQ(h.pair_count(), 42u);
    EXPECT_FALSE(h.contains(1, 3));
    EXPECT_TRUE(h.contains(1, 4));
    EXPECT_EQ(h.degree(1), 7u);
    EXPECT_TRUE(h.consistent());
}

// ---------------------------------------------------------------- kernels: serial == omp

namespace {

std::vector<std::uint64_t> random_batch(std::size_t n, std::size_t count, double p, std::uint64_t seed) {
    const std::size_t wpq = words_for(n);
    std::vector<std::uint64_t> words(count * wpq);
    const auto full = VertexSet::full(n);
    const auto thr = probability_threshold(p);
    for (std::size_t i = 0; i < count; ++i)
        draw_p_random_into(thr, full.words(), Seed{seed, 1}.key(i + 1),
                           std::span<std::uint64_t>(words).subspan(i * wpq, wpq));
    return words;
}

} // namespace

TEST(Kernels, AnswerQueriesAgree) {
    for (std::size_t n : {17u, 64u, 300u}) {
        const auto g = erdos_renyi_m(n, n / 3, n);
        const auto words = random_batch(n, 5000, 0.1, n);
        kernels::QueryBatch b{words, words_for(n)};
        std::vector<std::uint8_t> a(b.size()), c(b.size());
        kernels::serial::answer_queries(g, b, a);
        kernels::omp::answer_queries(g, b, c);
        EXPECT_EQ(a, c);
        for (std::size_t i = 0; i < 50; ++i)
            EXPECT_EQ(a[i], g.answer_pairwise(VertexSet::from_words(n, b[i])) ? 1 : 0);
    }
}

TEST(Kernels, ApplyNoQueriesAgree) {
    for (std::size_t n : {40u, 130u, 257u}) {
        const auto g = erdos_renyi_m(n, 10, 5);
        const auto words = random_batch(n, 2000, 0.08, 11);
        kernels::QueryBatch b{words, words_for(n)};
        std::vector<std::uint8_t> ans(b.size());
        kernels::serial::answer_queries(g, b, ans);
        const std::size_t wpr = words_for(n);
        std::vector<std::uint64_t> x(n * wpr, ~std::uint64_t{0}), y = x;
        kernels::serial::apply_no_queries({x, n, wpr}, b, ans);
        kernels::omp::apply_no_queries({y, n, wpr}, b, ans);
        EXPECT_EQ(x, y);
    }
}

TEST(Kernels, IndependentProfileAgree) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto g = erdos_renyi_m(14, 3 + seed * 4, seed);
        const auto a = kernels::serial::independent_set_profile(g);
        EXPECT_EQ(a, kernels::omp::independent_set_profile(g));
        EXPECT_EQ(a[0], 1u);
        EXPECT_EQ(a[1], 14u);
        EXPECT_EQ(a[2], 91u - g.m());
    }
}

TEST(Kernels, FindUncoveredAgree) {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const std::size_t pairs = 15, queries = 4 + seed;
        std::vector<std::vector<std::uint64_t>> cover(pairs, std::vector<std::uint64_t>(1));
        CounterRng rng(Seed{seed, 77});
        for (auto& c : cover) c[0] = rng() & ((std::uint64_t{1} << queries) - 1);
        for (std::size_t m = 1; m <= 3; ++m) {
            const auto a = kernels::serial::find_uncovered(cover, m);
            const auto b = kernels::omp::find_uncovered(cover, m);
            ASSERT_EQ(a.has_value(), b.has_value());
            if (a) {
                EXPECT_EQ(a->graph_pairs, b->graph_pairs);
                EXPECT_EQ(a->uncovered_pairs, b->uncovered_pairs);
            }
        }
    }
}

TEST(Kernels, MaxAgreementAgree) {
    const std::size_t rows = 9, cols = 120;
    std::vector<std::uint32_t> e(rows * cols);
    CounterRng rng(Seed{4, 4});
    for (auto& x : e) x = static_cast<std::uint32_t>(rng.below(5));
    const auto a = kernels::serial::max_column_agreement(e, rows, cols);
    const auto b = kernels::omp::max_column_agreement(e, rows, cols);
    EXPECT_EQ(a.max_agreement, b.max_agreement);
    EXPECT_EQ(a.col_a, b.col_a);
    EXPECT_EQ(a.col_b, b.col_b);
}
