// Serial reference vs OpenMP kernels on representative sizes.

#include "edq/generators.hpp"
#include "edq/kernels.hpp"
#include "edq/random.hpp"

#include <benchmark/benchmark.h>

using namespace edq;

namespace {

std::vector<std::uint64_t> batch_words(std::size_t n, std::size_t count, double p) {
    const std::size_t wpq = words_for(n);
    std::vector<std::uint64_t> words(count * wpq);
    const auto full = VertexSet::full(n);
    const auto thr = probability_threshold(p);
    for (std::size_t i = 0; i < count; ++i)
        draw_p_random_into(thr, full.words(), Seed{1, 1}.key(i + 1),
                           std::span<std::uint64_t>(words).subspan(i * wpq, wpq));
    return words;
}

template <bool Parallel>
void BM_AnswerQueries(benchmark::State& st) {
    const auto n = static_cast<std::size_t>(st.range(0));
    const auto g = erdos_renyi_m(n, 64, 3);
    const auto words = batch_words(n, 20000, 1.0 / 16);
    kernels::QueryBatch b{words, words_for(n)};
    std::vector<std::uint8_t> out(b.size());
    for (auto _ : st) {
        if constexpr (Parallel) kernels::omp::answer_queries(g, b, out);
        else kernels::serial::answer_queries(g, b, out);
        benchmark::DoNotOptimize(out.data());
    }
    st.SetItemsProcessed(static_cast<std::int64_t>(st.iterations() * b.size()));
}

template <bool Parallel>
void BM_ApplyNoQueries(benchmark::State& st) {
    const auto n = static_cast<std::size_t>(st.range(0));
    const auto g = erdos_renyi_m(n, 16, 4);
    const auto words = batch_words(n, 5000, 1.0 / 32);
    kernels::QueryBatch b{words, words_for(n)};
    std::vector<std::uint8_t> ans(b.size());
    kernels::serial::answer_queries(g, b, ans);
    const std::size_t wpr = words_for(n);
    std::vector<std::uint64_t> rows(n * wpr);
    for (auto _ : st) {
        std::fill(rows.begin(), rows.end(), ~std::uint64_t{0});
        if constexpr (Parallel) kernels::omp::apply_no_queries({rows, n, wpr}, b, ans);
        else kernels::serial::apply_no_queries({rows, n, wpr}, b, ans);
        benchmark::DoNotOptimize(rows.data());
    }
}

template <bool Parallel>
void BM_IndependentProfile(benchmark::State& st) {
    const auto g = erdos_renyi_m(static_cast<std::size_t>(st.range(0)), 12, 5);
    for (auto _ : st) {
        auto a = Parallel ? kernels::omp::independent_set_profile(g) : kernels::serial::independent_set_profile(g);
        benchmark::DoNotOptimize(a.data());
    }
}

template <bool Parallel>
void BM_MaxAgreement(benchmark::State& st) {
    const auto cols = static_cast<std::size_t>(st.range(0));
    const std::size_t rows = 12;
    std::vector<std::uint32_t> e(rows * cols);
    CounterRng rng(Seed{2, 2});
    for (auto& x : e) x = static_cast<std::uint32_t>(rng.below(13));
    for (auto _ : st) {
        auto r = Parallel ? kernels::omp::max_column_agreement(e, rows, cols)
                          : kernels::serial::max_column_agreement(e, rows, cols);
        benchmark::DoNotOptimize(r);
    }
}

template <bool Parallel>
void BM_FindUncovered(benchmark::State& st) {
    // All-pairs cover on n = 7: no counterexample, so the whole space is searched.
    const std::size_t n = 7;
    std::vector<std::vector<std::uint64_t>> cover;
    std::size_t e = 0;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b, ++e) cover.push_back({std::uint64_t{1} << e});
    const auto m = static_cast<std::size_t>(st.range(0));
    for (auto _ : st) {
        auto r = Parallel ? kernels::omp::find_uncovered(cover, m) : kernels::serial::find_uncovered(cover, m);
        benchmark::DoNotOptimize(r);
    }
}

} // namespace

BENCHMARK(BM_AnswerQueries<false>)->Arg(256)->Arg(2048);
BENCHMARK(BM_AnswerQueries<true>)->Arg(256)->Arg(2048);
BENCHMARK(BM_ApplyNoQueries<false>)->Arg(512)->Arg(2048);
BENCHMARK(BM_ApplyNoQueries<true>)->Arg(512)->Arg(2048);
BENCHMARK(BM_IndependentProfile<false>)->Arg(18)->Arg(22);
BENCHMARK(BM_IndependentProfile<true>)->Arg(18)->Arg(22);
BENCHMARK(BM_MaxAgreement<false>)->Arg(1024)->Arg(4096);
BENCHMARK(BM_MaxAgreement<true>)->Arg(1024)->Arg(4096);
BENCHMARK(BM_FindUncovered<false>)->Arg(2)->Arg(3);
BENCHMARK(BM_FindUncovered<true>)->Arg(2)->Arg(3);

BENCHMARK_MAIN();
