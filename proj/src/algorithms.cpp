#include "edq/algorithms.hpp"
#include "edq/known_m.hpp"
#include "edq/matrix_io.hpp"
#include "edq/unknown_m.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <numeric>

namespace edq {

const std::vector<std::string>& algorithm_ids() {
    static const std::vector<std::string> ids = {
        "brute-force",        "non-adaptive-mc",        "two-round-lv",          "two-round-mc",
        "three-round-lv",     "three-round-mc",         "four-round-lv",         "two-round-large-n",
        "three-round-lv-large-n", "unknown-m",          "unknown-m-logstar",     "two-round-deterministic",
        "five-round-deterministic", "nonadaptive-fallback"};
    return ids;
}

bool needs_edge_bound(const std::string& id) {
    return id != "brute-force" && id != "unknown-m" && id != "unknown-m-logstar";
}

std::size_t default_w(std::size_t m) { return std::max<std::size_t>(m + 1, 16); }

RoundBudget round_budget(const AlgorithmSpec& spec, std::size_t n, const LearnResult& r) {
    const auto& id = spec.id;
    const bool empty_m = needs_edge_bound(id) && spec.m == 0;
    if (id == "brute-force" || id == "non-adaptive-mc" || id == "nonadaptive-fallback") return {1, true};
    if (id == "two-round-lv") return empty_m ? RoundBudget{1, true} : RoundBudget{2 + r.restarts, true};
    if (id == "two-round-mc" || id == "two-round-large-n" || id == "two-round-deterministic") return {2, true};
    if (id == "three-round-mc" || id == "three-round-lv") return {3, true};
    if (id == "four-round-lv") return {4, true};
    if (id == "five-round-deterministic") return {5, true};
    if (id == "three-round-lv-large-n") return empty_m ? RoundBudget{1, true} : RoundBudget{3, false};
    const std::size_t k = id == "unknown-m-logstar" ? std::max<std::size_t>(1, log_star(static_cast<double>(n))) : spec.k;
    return {2 * k + 3, false};
}

QueryFamily verified_two_round_family(std::size_t n, std::size_t m, const Constants& c, const std::string& cache_path) {
    if (!cache_path.empty() && std::filesystem::exists(cache_path)) {
        auto fam = family_from(read_matrix_file(cache_path));
        if (fam.verified && fam.n == n && fam.m == m) return fam;
    }
    const auto t = static_cast<std::size_t>(
        std::ceil(c.c_family * static_cast<double>(m * m) * std::log(static_cast<double>(n))));
    // p = 1/m is degenerate at m = 1 (every query is V); use 1/2 there.
    const double p = m == 1 ? 0.5 : 1.0 / static_cast<double>(m);
    auto fam = search_two_round_family(n, m, t, 1, 1000, p);
    ensure(fam.has_value(), "no verified two-round family found within the seed budget");
    if (!cache_path.empty()) write_matrix_file(cache_path, to_matrix_file(*fam));
    return *fam;
}

LearnResult run_algorithm(const AlgorithmSpec& spec, OracleSession& s, std::uint64_t seed) {
    const auto& id = spec.id;
    const auto& c = spec.constants;
    if (id == "brute-force") return brute_force_learn(s);
    if (id == "non-adaptive-mc") return non_adaptive_mc(s, spec.m, seed, c);
    if (id == "two-round-lv") return las_vegas_two_round(s, spec.m, seed, c);
    if (id == "two-round-mc") return two_round_mc(s, spec.m, seed, c);
    if (id == "three-round-lv") return three_round_lv(s, spec.m, seed, c);
    if (id == "three-round-mc") return three_round_mc(s, spec.m, seed, c);
    if (id == "four-round-lv") return four_round_lv(s, spec.m, seed, c);
    if (id == "two-round-large-n")
        return two_round_large_n(s, spec.m, spec.w ? spec.w : default_w(spec.m), seed, c);
    if (id == "three-round-lv-large-n") return three_round_lv_large_n(s, spec.m, seed, c);
    if (id == "unknown-m") return pipeline_unknown_m(s, {false, spec.k}, seed, c);
    if (id == "unknown-m-logstar") return pipeline_unknown_m(s, {true, 0}, seed, c);
    if (id == "two-round-deterministic") {
        if (spec.family) return two_round_deterministic(s, *spec.family);
        require(spec.m >= 1, "two-round-deterministic: m must be positive");
        const auto fam = verified_two_round_family(s.n(), spec.m, c);
        return two_round_deterministic(s, fam);
    }
    if (id == "five-round-deterministic") return five_round_deterministic(s, spec.m);
    if (id == "nonadaptive-fallback") return nonadaptive_fallback(s, spec.m);
    throw PreconditionError("unknown algorithm " + id);
}

TrialOutcome run_trial(const AlgorithmSpec& spec, const HiddenGraph& g, std::uint64_t seed, bool keep_transcript) {
    TrialOutcome t;
    OracleSession s(g);
    const auto start = std::chrono::steady_clock::now();
    t.result = run_algorithm(spec, s, seed);
    t.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    t.result.edges = canonical(t.result.edges);
    t.queries = s.query_count();
    t.round_sizes = s.round_sizes();
    t.rounds = t.round_sizes.size();
    t.exact = t.result.edges == g.edges();
    const std::size_t sum = std::accumulate(t.round_sizes.begin(), t.round_sizes.end(), std::size_t{0});
    t.accounting_ok = sum == t.queries && (!t.result.has_prediction || t.result.predicted_queries == t.queries);
    const auto budget = round_budget(spec, g.n(), t.result);
    t.budget_ok = budget.exact ? t.rounds == budget.rounds : t.rounds <= budget.rounds;
    if (keep_transcript) {
        Transcript tr = capture(s, spec.id, seed, needs_edge_bound(spec.id) ? spec.m : 0);
        tr.result = t.result.edges;
        tr.success = t.result.success;
        tr.wall_ms = t.wall_ms;
        tr.restarts = t.result.restarts;
        tr.fallbacks = t.result.fallbacks;
        t.transcript = std::move(tr);
    }
    return t;
}

} // namespace edq
