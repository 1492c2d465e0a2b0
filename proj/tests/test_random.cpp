#include "edq/random.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

using namespace edq;

TEST(Random, PEqualsOneIsFullDomain) {
    const auto dom = VertexSet::of(200, {0, 5, 63, 64, 150, 199});
    PRandomSchedule s(1.0, 4, dom, Seed{1, 2});
    for (std::size_t i = 1; i <= 4; ++i) EXPECT_EQ(s.draw(i), dom);
}

TEST(Random, ProbabilityOutOfRangeRejected) {
    EXPECT_THROW(PRandomSchedule(0.0, 3, VertexSet::full(100), Seed{1, 2}), PreconditionError);
    EXPECT_THROW(PRandomSchedule(1.5, 3, VertexSet::full(100), Seed{1, 2}), PreconditionError);
}

TEST(Random, Deterministic) {
    PRandomSchedule a(0.37, 10, VertexSet::full(500), Seed{42, 7});
    PRandomSchedule b(0.37, 10, VertexSet::full(500), Seed{42, 7});
    for (std::size_t i = 1; i <= 10; ++i) EXPECT_EQ(a.draw(i), b.draw(i));
    PRandomSchedule c(0.37, 10, VertexSet::full(500), Seed{42, 8});
    EXPECT_NE(a.draw(1), c.draw(1));
}

TEST(Random, StaysInsideDomain) {
    const auto dom = VertexSet::of(300, {3, 70, 71, 299});
    PRandomSchedule s(0.5, 50, dom, Seed{3, 3});
    for (std::size_t i = 1; i <= 50; ++i) EXPECT_TRUE(s.draw(i).subset_of(dom));
}

TEST(Random, HalfMeanWithinThreeSigma) {
    const std::size_t n = 10000, draws = 10000;
    PRandomSchedule s(0.5, draws, VertexSet::full(n), Seed{11, 1});
    double total = 0;
    for (std::size_t i = 1; i <= draws; ++i) total += static_cast<double>(s.draw(i).count());
    const double mean = total / draws;
    // Each draw has sd sqrt(n p q) = 50; the mean of 10^4 draws has sd 0.5.
    EXPECT_NEAR(mean, 5000.0, 3 * 0.5);
}

TEST(Random, InclusionRateMatchesP) {
    for (double p : {1.0 / 3.0, 0.125, 0.01, 0.7}) {
        const std::size_t n = 4096, draws = 400;
        PRandomSchedule s(p, draws, VertexSet::full(n), Seed{5, 9});
        double total = 0;
        for (std::size_t i = 1; i <= draws; ++i) total += static_cast<double>(s.draw(i).count());
        const double N = static_cast<double>(n * draws);
        EXPECT_NEAR(total / N, p, 4 * std::sqrt(p * (1 - p) / N)) << p;
    }
}

TEST(Random, VerticesIndependentAcrossPositions) {
    // Pairwise inclusion frequency of two fixed vertices ~ p^2.
    const double p = 0.5;
    const std::size_t draws = 20000;
    PRandomSchedule s(p, draws, VertexSet::full(130), Seed{6, 6});
    std::size_t both = 0;
    for (std::size_t i = 1; i <= draws; ++i) {
        const auto q = s.draw(i);
        both += q.contains(3) && q.contains(129);
    }
    EXPECT_NEAR(static_cast<double>(both) / draws, 0.25, 4 * std::sqrt(0.25 * 0.75 / draws));
}

TEST(Random, CounterRngBelowIsUniform) {
    CounterRng rng(Seed{1, 1});
    std::vector<std::size_t> hist(7, 0);
    for (int i = 0; i < 70000; ++i) ++hist[rng.below(7)];
    for (auto h : hist) EXPECT_NEAR(static_cast<double>(h), 10000.0, 4 * std::sqrt(10000.0));
}

TEST(Random, StreamsAndTrialSeedsDistinct) {
    std::set<std::uint64_t> ids;
    for (std::uint32_t r = 0; r < 6; ++r)
        for (std::uint32_t ph = 0; ph < 6; ++ph) ids.insert(stream_id("alg", r, ph));
    EXPECT_EQ(ids.size(), 36u);
    EXPECT_NE(stream_id("a", 1, 1), stream_id("b", 1, 1));
    std::set<std::uint64_t> seeds;
    for (std::uint64_t t = 0; t < 1000; ++t) seeds.insert(trial_seed(7, t));
    EXPECT_EQ(seeds.size(), 1000u);
    EXPECT_EQ(trial_seed(7, 3), trial_seed(7, 3));
}

TEST(Repetitions, WorkedExample) {
    // n=16, delta=1/2, p=1/4, r=2, m=2: rate = (1/16)(1 - 1/2 - 1/8) = 0.0234375.
    const double p = 0.25, r = 2, m = 2;
    const double rate = p * p * (1 - r * p - m * p * p);
    EXPECT_DOUBLE_EQ(rate, 0.0234375);
    EXPECT_EQ(repetitions(16, 0.5, rate), 267u);
}

TEST(Repetitions, RateOneIsSingleTrial) { EXPECT_EQ(repetitions(1000, 0.01, 1.0), 1u); }

TEST(Repetitions, MonotoneInDelta) {
    std::size_t prev = 0;
    for (double d : {0.5, 0.25, 0.1, 0.01, 1e-6}) {
        const auto t = repetitions(64, d, 0.01);
        EXPECT_GE(t, prev);
        prev = t;
    }
    EXPECT_THROW(repetitions(64, 0.0, 0.1), PreconditionError);
}
