#include "edq/algorithms.hpp"
#include "edq/generators.hpp"
#include "edq/known_m.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace edq;

namespace {

bool is_subset(const EdgeList& a, const CandidateEdgeSet& h) {
    for (const auto& e : a)
        if (!h.contains(e.u, e.v)) return false;
    return true;
}

TrialOutcome trial(const std::string& id, const HiddenGraph& g, std::size_t m, std::uint64_t seed) {
    AlgorithmSpec spec;
    spec.id = id;
    spec.m = m;
    return run_trial(spec, g, seed);
}

} // namespace

TEST(Elimination, SingleEdgeRepetitions) {
    // m=1, n=16, delta=0.1: ceil((2 ln 16 + ln 10) / (1/4 * 1/4)) = 126.
    EXPECT_EQ(elimination_repetitions(16, 1, 1.0, 0.5, 0.1), 126u);
    const auto ep = make_elimination_params(16, 1, 0.5, 1.0, 0.1);
    EXPECT_EQ(ep.t, 126u);
    EXPECT_FALSE(ep.clamped);
}

TEST(Elimination, ClampReported) {
    const auto ep = make_elimination_params(64, 4, 0.5, 4.0, 0.1);
    EXPECT_TRUE(ep.clamped);
    EXPECT_GE(1.0 - ep.r * ep.p - 4.0 * ep.p * ep.p, 0.25 - 1e-12);
    EXPECT_THROW(make_elimination_params(64, 4, 0.0, 4.0, 0.1), PreconditionError);
}

TEST(Elimination, TrueEdgesNeverEliminated) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const auto g = erdos_renyi_m(40 + seed, 1 + seed % 9, seed);
        OracleSession s(g);
        const auto ep = make_elimination_params(g.n(), g.m(), 0.3, 0.0, 0.5);
        const auto h = elimination_round(s, ep, Seed{seed, 1});
        EXPECT_TRUE(is_subset(g.edges(), h));
        EXPECT_TRUE(h.consistent());
        EXPECT_EQ(s.query_count(), ep.t);
    }
}

TEST(Elimination, EmptyGraphShrinks) {
    const HiddenGraph g(8, {});
    OracleSession s(g);
    const auto ep = make_elimination_params(8, 0, 0.5, 0.0, 0.1);
    const auto h = elimination_round(s, ep, Seed{3, 3});
    EXPECT_EQ(h.pair_count(), 0u);
}

TEST(Elimination, StarRecoveredMostly) {
    const auto g = planted_star(32, 4, 1);
    std::size_t wrong = 0;
    const std::size_t trials = 300;
    for (std::size_t i = 0; i < trials; ++i) {
        OracleSession s(g);
        const auto ep = make_elimination_params(32, 4, 1.0 / 8, 4, 0.1);
        const auto h = elimination_round(s, ep, Seed{trial_seed(5, i), 1});
        wrong += h.pairs() != g.edges();
    }
    const double sigma = std::sqrt(0.1 * 0.9 / trials);
    EXPECT_LE(static_cast<double>(wrong) / trials, 0.1 + 3 * sigma);
}

TEST(Partition, Balanced) {
    for (std::size_t u : {1u, 3u, 7u, 50u}) {
        const auto p = partition_vertices(50, u, 9);
        EXPECT_EQ(p.size(), u);
        std::size_t lo = 50, hi = 0, total = 0;
        for (const auto& c : p.cells) {
            lo = std::min(lo, c.size());
            hi = std::max(hi, c.size());
            total += c.size();
        }
        EXPECT_EQ(total, 50u);
        EXPECT_LE(hi - lo, 1u);
    }
    EXPECT_EQ(partition_vertices(10, 1, 1).cells[0].size(), 10u);
}

TEST(NeighborLearner, NoNeighbourGivesEmpty) {
    const HiddenGraph g(30, {{20, 21}});
    OracleSession s(g);
    VertexSet I(30);
    for (Vertex v = 0; v < 10; ++v) I.insert(v);
    const auto N = learn_neighbors_in_independent_set(s, 15, I, 3, 0.01, Seed{1, 1});
    EXPECT_TRUE(N.empty());
}

TEST(NeighborLearner, StarCentreLearnsLeaves) {
    std::size_t ok = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto g = planted_star(60, 6, seed, 0);
        VertexSet I = VertexSet::full(60);
        I.erase(0);
        OracleSession s(g);
        const auto N = learn_neighbors_in_independent_set(s, 0, I, 6, 0.1, Seed{seed, 2});
        EXPECT_TRUE(g.neighbours(VertexSet::of(60, {0})).subset_of(N)); // never loses a neighbour
        ok += N == g.neighbours(VertexSet::of(60, {0}));
    }
    EXPECT_GE(ok, 90u);
}

TEST(Structure, ExactHypothesisHasNoHeavyVertices) {
    const auto g = random_matching(20, 5, 1);
    CandidateEdgeSet h(20);
    for (const auto& e : g.edges()) h.insert(e.u, e.v);
    const auto st = classify_structure(h, 4.0);
    EXPECT_TRUE(st.W.empty());
    EXPECT_TRUE(st.E_W.empty());
    EXPECT_EQ(st.U, g.edges());
}

TEST(Structure, PendantInIndependentPart) {
    // r = 8: w = 0 has degree 5 > r/2; pendant 1 has degree 1 <= r/8 and no common
    // neighbour with w.
    CandidateEdgeSet h(10);
    for (Vertex u : {1, 2, 3, 4, 5}) h.insert(0, u);
    const auto st = classify_structure(h, 8.0);
    ASSERT_EQ(st.W.size(), 1u);
    EXPECT_EQ(st.W[0], 0u);
    EXPECT_TRUE(st.I[0].contains(1));
    EXPECT_EQ(st.E_W.size(), 5u);
    EXPECT_TRUE(st.U.empty());
}

TEST(Structure, CommonLowDegreeNeighbourExcludes) {
    // r = 16: 1 and 10 have degree 2 <= r/8 but share neighbour pairs of degree 2 <= r+1.
    CandidateEdgeSet h(12);
    for (Vertex u = 1; u <= 10; ++u) h.insert(0, u);
    h.insert(1, 10);
    const auto st = classify_structure(h, 16.0);
    ASSERT_EQ(st.W.size(), 1u);
    EXPECT_FALSE(st.I[0].contains(1));
    EXPECT_FALSE(st.I[0].contains(10));
    EXPECT_TRUE(st.I[0].contains(3));
    EXPECT_EQ(st.U.size(), 3u); // {0,1}, {0,10}, {1,10}
}

TEST(Nominal, TwoRound) {
    const auto p = two_round_nominal(8);
    EXPECT_NEAR(p.p, 0.25, 1e-12);
    EXPECT_NEAR(p.r, 2.0, 1e-12);
}

TEST(Nominal, ThreeRound) {
    const auto p = three_round_nominal(4);
    EXPECT_NEAR(p.p, 1.0 / 32.0, 1e-15);
    EXPECT_NEAR(p.r, 16.0, 1e-12);
}

TEST(Algorithms, OverestimatedMStillCorrect) {
    const auto g = random_matching(64, 2, 3);
    std::size_t ok = 0;
    for (std::uint64_t s = 0; s < 50; ++s) ok += trial("non-adaptive-mc", g, 5, s).exact;
    EXPECT_GE(ok, 45u);
}

TEST(Algorithms, LasVegasAlwaysExact) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto g = erdos_renyi_m(32, 1 + seed % 4, seed);
        for (const char* id : {"two-round-lv", "three-round-lv", "four-round-lv"}) {
            const auto t = trial(id, g, 4, seed);
            ASSERT_TRUE(t.exact) << id << " seed " << seed;
            EXPECT_TRUE(t.accounting_ok);
            EXPECT_TRUE(t.budget_ok);
        }
    }
}

TEST(Algorithms, TwoRoundLvSecondRoundSmall) {
    const auto g = erdos_renyi_m(64, 4, 2);
    double second = 0;
    const int trials = 100;
    for (int i = 0; i < trials; ++i) {
        const auto t = trial("two-round-lv", g, 4, trial_seed(1, i));
        second += static_cast<double>(t.round_sizes.back());
    }
    EXPECT_LE(second / trials, 4 + 1 + 1.0);
}

TEST(Algorithms, TriangleTwoRound) {
    const HiddenGraph g(64, {{3, 9}, {9, 40}, {3, 40}});
    std::size_t ok = 0;
    for (std::uint64_t i = 0; i < 200; ++i) {
        const auto t = trial("two-round-mc", g, 3, trial_seed(2, i));
        ok += t.exact;
        ASSERT_EQ(t.rounds, 2u);
        ASSERT_TRUE(t.accounting_ok);
    }
    EXPECT_GE(ok, 190u);
}

TEST(Algorithms, DoubleStarThreeRound) {
    const auto g = double_star(128, 3, 3, 4);
    std::size_t ok = 0;
    for (std::uint64_t i = 0; i < 200; ++i) {
        const auto t = trial("three-round-mc", g, 6, trial_seed(3, i));
        ok += t.exact;
        ASSERT_EQ(t.rounds, 3u);
        ASSERT_TRUE(t.accounting_ok);
    }
    EXPECT_GE(ok, 190u);
}

TEST(Algorithms, HeavyVertexBoundAfterElimination) {
    // |W| <= 8m/r whenever round 1 leaves only pairs allowed by the facts.
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto g = planted_star(128, 12, seed);
        OracleSession s(g);
        const auto nom = three_round_nominal(12);
        const auto ep = make_elimination_params(128, 12, nom.p, nom.r, 0.01);
        const auto h = elimination_round(s, ep, Seed{seed, 4});
        const auto st = classify_structure(h, ep.r);
        EXPECT_LE(static_cast<double>(st.W.size()), 8.0 * 12 / ep.r + 1e-9);
    }
}

TEST(Algorithms, EmptyGraphRoundsExact) {
    const HiddenGraph g(50, {});
    for (const auto& id : algorithm_ids()) {
        if (id == "five-round-deterministic" || id == "two-round-deterministic") continue;
        const auto t = trial(id, g, 0, 1);
        EXPECT_TRUE(t.exact) << id;
        EXPECT_TRUE(t.budget_ok) << id;
        EXPECT_TRUE(t.accounting_ok) << id;
    }
}

TEST(LargeN, CollisionBoundExample) {
    const double m = 2, u = std::pow(64.0, 3);
    EXPECT_NEAR(m * (2 * m - 1) / u, 6.0 / 262144.0, 1e-15);
    EXPECT_EQ(lv_large_n_cells(2), 2u * 16u * 3u);
}

TEST(LargeN, PlantedStarTwoRound) {
    const auto g = planted_star(4096, 3, 8);
    std::size_t ok = 0;
    const std::size_t trials = 300;
    for (std::size_t i = 0; i < trials; ++i) {
        OracleSession s(g);
        const auto r = two_round_large_n(s, 3, 16, trial_seed(9, i));
        ok += canonical(r.edges) == g.edges();
        ASSERT_EQ(s.round_sizes().size(), 2u);
    }
    EXPECT_GE(static_cast<double>(ok) / trials, 0.99);
}

TEST(LargeN, LasVegasExactWithFallback) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto g = erdos_renyi_m(700, 2, seed);
        const auto t = trial("three-round-lv-large-n", g, 2, seed);
        ASSERT_TRUE(t.exact) << seed;
        EXPECT_LE(t.rounds, 3u);
        EXPECT_TRUE(t.accounting_ok);
    }
}

TEST(LargeN, SameCellEdgeTriggersFallback) {
    // Each edge lands inside one of the 96 cells with probability about 1/96.
    const HiddenGraph g(200, {{0, 1}, {2, 3}});
    std::size_t fallbacks = 0;
    for (std::uint64_t seed = 0; seed < 400; ++seed) {
        OracleSession s(g);
        const auto r = three_round_lv_large_n(s, 2, seed);
        EXPECT_EQ(canonical(r.edges), g.edges());
        fallbacks += r.fallbacks;
    }
    EXPECT_GT(fallbacks, 0u);
}

TEST(LargeN, TinyUniverseFallsBackImmediately) {
    const HiddenGraph g(3, {{0, 1}, {1, 2}});
    OracleSession s(g);
    const auto r = three_round_lv_large_n(s, 2, 1);
    EXPECT_EQ(r.fallbacks, 1u);
    EXPECT_EQ(canonical(r.edges), g.edges());
}
