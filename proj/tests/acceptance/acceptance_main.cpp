// Acceptance run: one PASS/FAIL line per criterion.
// Usage: edq_acceptance [cache-dir] [--only N[,N...]]

#include "edq/algorithms.hpp"
#include "edq/curve.hpp"
#include "edq/generators.hpp"
#include "edq/harness.hpp"
#include "edq/known_m.hpp"
#include "edq/unknown_m.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace edq;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

// Query accounting across criteria 3-13.
struct Ledger {
    std::size_t runs = 0;
    std::size_t bad = 0;
    std::string first_bad;

    void note(bool ok, const std::string& where) {
        ++runs;
        if (!ok && bad++ == 0) first_bad = where;
    }
    void trial(const TrialOutcome& t, const std::string& where) { note(t.accounting_ok, where); }
    // Sessions driven directly: rounds must sum to the count, and to `predicted` when given.
    void session(const OracleSession& s, std::size_t predicted, const std::string& where) {
        const auto sizes = s.round_sizes();
        const std::size_t sum = std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
        note(sum == s.query_count() && (predicted == 0 || predicted == s.query_count()), where);
    }
};

Ledger g_ledger;

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

double wilson_margin(std::size_t ok, std::size_t trials) {
    const double rate = static_cast<double>(ok) / static_cast<double>(trials);
    return rate - wilson(ok, trials).lo;
}

// Statistical gate "rate >= target - margin".
bool rate_gate(std::size_t ok, std::size_t trials, double target, std::string& detail) {
    const double rate = static_cast<double>(ok) / static_cast<double>(trials);
    const double margin = wilson_margin(ok, trials);
    detail += fmt(" rate=%.3f(>=%.3f)", rate, target - margin);
    return rate >= target - margin;
}

TrialOutcome trial(const std::string& id, const HiddenGraph& g, std::size_t m, std::uint64_t seed, std::size_t k = 1) {
    AlgorithmSpec spec;
    spec.id = id;
    spec.m = m;
    spec.k = k;
    return run_trial(spec, g, seed);
}

double log2d(double x) { return std::log2(x); }

// ---------------------------------------------------------------- 1

Verdict oracle_exactness() {
    std::size_t mismatches = 0, queries = 0;
    for (std::size_t inst = 0; inst < 500; ++inst) {
        const std::size_t n = 2 + inst % 11; // 2..12
        const std::size_t pairs = n * (n - 1) / 2;
        const std::size_t m = static_cast<std::size_t>(mix64(inst) % (pairs + 1));
        const auto g = erdos_renyi_m(n, m, inst);
        // Batch path through a session, single path through answer_query, reference by pair scan.
        OracleSession s(g);
        auto r = s.open_round();
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
            auto q = r.emplace();
            q[0] = mask;
        }
        r.close();
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
            const auto q = VertexSet::from_words(n, std::span<const std::uint64_t>(&mask, 1));
            bool ref = false;
            for (const auto& e : g.edges()) ref = ref || (q.contains(e.u) && q.contains(e.v));
            mismatches += (answer_query(g, q) != ref) + (r.answer(mask) != ref);
            ++queries;
        }
    }
    return {mismatches == 0, fmt("500 instances, %zu queries, %zu mismatches", queries, mismatches)};
}

// ---------------------------------------------------------------- 2

Verdict soundness() {
    std::size_t violations = 0;
    const std::size_t trials = 10000;
    for (std::size_t i = 0; i < trials; ++i) {
        const std::uint64_t h = mix64(i + 1);
        const std::size_t n = 8 + h % 505;                        // 8..512
        const std::size_t m = std::min<std::size_t>(1 + (h >> 12) % 32, n * (n - 1) / 2);
        const auto g = erdos_renyi_m(n, m, h);
        EliminationParams ep;
        ep.p = 0.02 + static_cast<double>((h >> 24) % 1000) / 1000.0 * 0.48;
        ep.m = m;
        ep.t = 1 + (h >> 40) % 200;
        OracleSession s(g);
        const auto H = elimination_round(s, ep, Seed{h, 2});
        for (const auto& e : g.edges()) violations += !H.contains(e.u, e.v);
    }
    return {violations == 0, fmt("%zu elimination rounds, %zu true edges eliminated", trials, violations)};
}

// ---------------------------------------------------------------- 3

Verdict non_adaptive() {
    const std::size_t n = 128, trials = 200;
    const double delta = 0.1;
    bool ok = true;
    std::string d;
    for (std::size_t m : {2u, 4u, 8u}) {
        const double p = 1.0 / (2.0 * m), r = static_cast<double>(m);
        const auto t_closed = static_cast<std::size_t>(
            std::ceil((2 * std::log(double(n)) + std::log(1 / delta)) / (p * p * (1 - r * p - m * p * p))));
        std::size_t exact = 0, wrong_count = 0;
        Constants c = default_constants();
        c.delta = delta;
        for (std::size_t i = 0; i < trials; ++i) {
            const auto seed = trial_seed(3000 + m, i);
            const auto g = erdos_renyi_m(n, m, seed ^ 0x5a5a);
            AlgorithmSpec spec{"non-adaptive-mc", m, 1, 0, c, nullptr};
            const auto t = run_trial(spec, g, seed);
            g_ledger.trial(t, "3");
            g_ledger.note(t.queries == t_closed, "3 closed form");
            exact += t.exact;
            wrong_count += t.queries != t_closed || t.rounds != 1;
        }
        d += fmt(" m=%zu t=%zu", m, t_closed);
        ok = rate_gate(exact, trials, 0.9, d) && ok;
        ok = ok && wrong_count == 0;
    }
    return {ok, d};
}

// Per-m mean query ratios against a shape function; band = max/min.
struct Band {
    std::vector<double> means;
    double lo() const { return *std::min_element(means.begin(), means.end()); }
    double hi() const { return *std::max_element(means.begin(), means.end()); }
};

// ---------------------------------------------------------------- 4

Verdict two_round() {
    const std::size_t n = 512, trials = 200;
    bool ok = true;
    std::string d;
    Band band;
    for (std::size_t m : {4u, 8u, 16u, 27u}) {
        std::size_t exact = 0, bad_rounds = 0;
        double q = 0;
        for (std::size_t i = 0; i < trials; ++i) {
            const auto seed = trial_seed(4000 + m, i);
            const auto g = erdos_renyi_m(n, m, seed ^ 0xa5a5);
            const auto t = trial("two-round-mc", g, m, seed);
            g_ledger.trial(t, "4");
            exact += t.exact;
            bad_rounds += t.rounds != 2;
            q += static_cast<double>(t.queries);
        }
        const double ratio = q / trials / (std::pow(double(m), 4.0 / 3.0) * log2d(n));
        band.means.push_back(ratio);
        d += fmt(" m=%zu:", m);
        ok = rate_gate(exact, trials, 0.95, d) && ok;
        d += fmt(" q/(m^4/3 lg n)=%.1f", ratio);
        ok = ok && bad_rounds == 0;
    }
    d += fmt(" band=%.2f(<=4)", band.hi() / band.lo());
    ok = ok && band.hi() <= 4 * band.lo();
    return {ok, d};
}

// Fitted constant: C = largest per-m mean ratio; every run must stay within 1.5 C and
// the per-m means within a factor 4 of each other.
struct Fit {
    Band band;
    std::vector<std::vector<double>> runs;
    std::string check(bool& ok) const {
        const double C = band.hi();
        double worst = 0;
        for (const auto& rs : runs)
            for (double r : rs) worst = std::max(worst, r);
        ok = ok && worst <= 1.5 * C && band.hi() <= 4 * band.lo();
        return fmt(" C=%.2f worst-run=%.2f(<=%.2f) spread=%.2f(<=4)", C, worst, 1.5 * C, band.hi() / band.lo());
    }
};

// ---------------------------------------------------------------- 5

Verdict three_round() {
    const std::size_t n = 256, trials = 200;
    bool ok = true;
    std::string d;
    Fit fit;
    for (std::size_t m : {4u, 16u, 64u}) {
        std::size_t exact = 0, bad_rounds = 0;
        const double shape = m * log2d(n) + std::pow(double(m), 1.5);
        std::vector<double> rs;
        for (std::size_t i = 0; i < trials; ++i) {
            const auto seed = trial_seed(5000 + m, i);
            const auto g = erdos_renyi_m(n, m, seed ^ 0x3c3c);
            const auto t = trial("three-round-mc", g, m, seed);
            g_ledger.trial(t, "5");
            exact += t.exact;
            bad_rounds += t.rounds != 3;
            rs.push_back(static_cast<double>(t.queries) / shape);
        }
        fit.band.means.push_back(std::accumulate(rs.begin(), rs.end(), 0.0) / trials);
        fit.runs.push_back(rs);
        d += fmt(" m=%zu:", m);
        ok = rate_gate(exact, trials, 0.95, d) && ok;
        ok = ok && bad_rounds == 0;
    }
    d += fit.check(ok);
    return {ok, d};
}

// ---------------------------------------------------------------- 6

Verdict large_n() {
    const std::size_t n = 2048, m = 2, trials = 500;
    std::size_t exact = 0, fallbacks = 0, bad_rounds = 0;
    for (std::size_t i = 0; i < trials; ++i) {
        const auto seed = trial_seed(6000, i);
        const auto g = erdos_renyi_m(n, m, seed ^ 0x77);
        const auto t = trial("three-round-lv-large-n", g, m, seed);
        g_ledger.trial(t, "6");
        exact += t.exact;
        fallbacks += t.result.fallbacks > 0;
        bad_rounds += t.result.fallbacks == 0 && t.rounds > 3;
    }
    const double fb = static_cast<double>(fallbacks) / trials;
    return {exact == trials && fb <= 0.05 && bad_rounds == 0,
            fmt("exact=%zu/%zu fallback=%.3f(<=0.05) over-budget=%zu", exact, trials, fb, bad_rounds)};
}

// ---------------------------------------------------------------- 7

Verdict curve_properties() {
    std::size_t violations = 0, pstar_bad = 0, nonempty = 0;
    const double tol = 1e-12;
    std::vector<double> grid;
    for (int i = 0; i <= 20; ++i) grid.push_back(i / 20.0);
    for (std::size_t inst = 0; inst < 200; ++inst) {
        const std::size_t n = 4 + inst % 11; // 4..14
        const std::size_t pairs = n * (n - 1) / 2;
        HiddenGraph g;
        switch (inst % 4) {
        case 0: g = erdos_renyi_m(n, mix64(inst) % (pairs + 1), inst); break;
        case 1: g = planted_star(n, 1 + inst % (n - 1), inst); break;
        case 2: g = random_matching(n, 1 + inst % (n / 2), inst); break;
        default: g = erdos_renyi_m(n, std::min<std::size_t>(pairs, 1 + inst % 6), inst); break;
        }
        const NoRateCurve c(g);
        const double m = static_cast<double>(g.m());
        for (std::size_t a = 0; a < grid.size(); ++a) {
            const double p = grid[a];
            const double N = c.no_rate(p);
            if (g.m() > 0) violations += N < 1 - m * p * p - tol || N > 1 - p * p + tol;
            if (a > 0 && g.m() > 0) violations += !(c.no_rate(grid[a - 1]) > N);
            for (std::size_t b = 1; b < grid.size(); ++b) {
                const double p2 = grid[b];
                if (p == 0 || p + p2 > 1) continue;
                const double mid = c.no_rate(p + p2 - p * p2);
                violations += mid > N * c.no_rate(p2) + tol;
                if (g.m() > 0) violations += !(c.no_rate(p + p2) < mid);
            }
            for (int k = 2; k * p <= 1 && p > 0 && g.m() > 0; ++k)
                violations += !(c.no_rate(k * p) < std::pow(N, k));
        }
        if (g.m() > 0) {
            ++nonempty;
            const double ps = c.p_star();
            pstar_bad += ps < 1 / std::sqrt(2 * m) - 1e-9 || ps > 1 / std::sqrt(2.0) + 1e-9;
        }
    }
    return {violations == 0 && pstar_bad == 0,
            fmt("200 instances (%zu nonempty), %zu inequality violations, %zu p* outside window", nonempty,
                violations, pstar_bad)};
}

// ---------------------------------------------------------------- 8, 9

std::size_t count_levels(double bound, double base) {
    std::size_t i = 0;
    while (std::pow(base, double(i)) <= bound) ++i;
    return i;
}

Verdict estimate_window() {
    const std::size_t n = 1024, trials = 300;
    const Constants c = default_constants();
    const std::size_t per = static_cast<std::size_t>(std::ceil(c.c_est * std::log(double(n))));
    bool ok = true;
    std::string d;
    for (std::size_t dd : {4u, 16u, 64u}) {
        const double ps = closed_form::star_p_star(dd);
        std::size_t in = 0;
        for (std::size_t i = 0; i < trials; ++i) {
            const auto seed = trial_seed(8000 + dd, i);
            const auto g = planted_star(n, dd, seed);
            OracleSession s(g);
            const auto ke = k_estimate(s, 1, seed);
            const double M = double(n) * n;
            g_ledger.session(s, 1 + (count_levels(32 * M, 4) - 1) * per, "8");
            const double p = ke.outcome.p;
            in += !ke.outcome.escalated && p >= ps / 8 - 1e-12 && p <= ps + 1e-12;
        }
        d += fmt(" d=%zu p*=%.4f:", dd, ps);
        ok = ok && static_cast<double>(in) / trials >= 0.95;
        d += fmt(" in-window=%.3f(>=0.95)", static_cast<double>(in) / trials);
    }
    return {ok, d};
}

Verdict degree_window() {
    const std::size_t n = 1024, trials = 300;
    const Constants c = default_constants();
    const std::size_t per = static_cast<std::size_t>(std::ceil(c.c_deg * std::log(double(n))));
    bool ok = true;
    std::string d;
    for (std::size_t dd : {4u, 16u, 64u}) {
        std::size_t in = 0;
        for (std::size_t i = 0; i < trials; ++i) {
            const auto seed = trial_seed(9000 + dd, i);
            const auto g = planted_star(n, dd, seed, 0);
            OracleSession s(g);
            const auto e = estimate_degree(s, 0, double(n), seed);
            g_ledger.session(s, 1 + (count_levels(16.0 * n, 2) - 1) * per, "9");
            const double inv = 1.0 / e.p;
            in += !e.escalated && inv >= double(dd) && inv <= 31.0 * dd;
        }
        d += fmt(" d=%zu in-window=%.3f(>=0.95)", dd, static_cast<double>(in) / trials);
        ok = ok && static_cast<double>(in) / trials >= 0.95;
    }
    return {ok, d};
}

// ---------------------------------------------------------------- 10

Verdict unknown_m() {
    const std::size_t n = 1024, trials = 200;
    bool ok = true;
    std::string d;
    Fit fit;
    const std::size_t round_cap = log_star(double(n)) + 3;
    const std::size_t pinned = 7;
    std::size_t exact = 0, total = 0, fallbacks = 0, over = 0, max_rounds = 0;
    for (std::size_t m : {4u, 16u, 64u}) {
        std::vector<double> rs;
        for (std::size_t i = 0; i < trials; ++i) {
            const auto seed = trial_seed(10000 + m, i);
            const auto g = erdos_renyi_m(n, m, seed ^ 0x1010);
            const auto t = trial("unknown-m-logstar", g, 0, seed);
            g_ledger.trial(t, "10");
            ++total;
            exact += t.exact;
            fallbacks += t.result.fallbacks > 0;
            if (t.result.fallbacks == 0) {
                over += t.rounds > pinned;
                max_rounds = std::max(max_rounds, t.rounds);
            }
            rs.push_back(static_cast<double>(t.queries) / (m * log2d(n)));
        }
        fit.band.means.push_back(std::accumulate(rs.begin(), rs.end(), 0.0) / trials);
        fit.runs.push_back(rs);
    }
    const double fb = static_cast<double>(fallbacks) / total;
    ok = exact == total && fb <= 0.05 && over == 0;
    d = fmt("exact=%zu/%zu fallback=%.3f(<=0.05) max-rounds=%zu(<=%zu; log*+3=%zu)", exact, total, fb, max_rounds,
            pinned, round_cap);
    d += fit.check(ok);
    return {ok, d};
}

// ---------------------------------------------------------------- 11

Verdict one_or() {
    const std::size_t n = 64;
    const auto code = build_one_or_code(n);
    std::size_t errors = 0;
    auto answers_for = [&](std::uint64_t mask) {
        std::vector<std::uint8_t> a(code.queries());
        for (std::size_t j = 0; j < a.size(); ++j) a[j] = (mask >> j) & 1;
        return a;
    };
    errors += decode_one_or(answers_for(0), code).kind != OneOrDecode::empty;
    for (std::size_t v = 0; v < n; ++v) {
        const auto dec = decode_one_or(answers_for(code.assignment[v]), code);
        errors += dec.kind != OneOrDecode::vertex || dec.v != v;
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            errors += decode_one_or(answers_for(code.assignment[a] | code.assignment[b]), code).kind != OneOrDecode::error;
    // Smallest t with binom(2t, t) >= n.
    auto binom = [](std::size_t a, std::size_t b) {
        double r = 1;
        for (std::size_t i = 1; i <= b; ++i) r = r * double(a - b + i) / double(i);
        return r;
    };
    std::size_t t = 1;
    while (binom(2 * t, t) < n) ++t;
    const bool minimal = code.t == t;
    return {errors == 0 && minimal,
            fmt("64 singletons + 2016 pairs + empty: %zu errors; 2t=%zu (minimal %zu)", errors, code.queries(), 2 * t)};
}

// ---------------------------------------------------------------- 12

Verdict two_round_det(const std::string& cache) {
    const std::size_t n = 8, m = 1;
    const auto fam = verified_two_round_family(n, m, default_constants(), cache);
    std::size_t wrong = 0, bad_rounds = 0, targets = 0;
    std::vector<HiddenGraph> gs{HiddenGraph(n, {})};
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b) gs.emplace_back(n, EdgeList{{a, b}});
    for (const auto& g : gs) {
        AlgorithmSpec spec;
        spec.id = "two-round-deterministic";
        spec.m = m;
        spec.family = &fam;
        const auto t = run_trial(spec, g, 0);
        g_ledger.trial(t, "12");
        wrong += !t.exact;
        bad_rounds += t.rounds != 2;
        ++targets;
    }
    return {fam.verified && wrong == 0 && bad_rounds == 0,
            fmt("family t=%zu seed=%llu verified=%d; %zu targets, %zu wrong, %zu not 2 rounds", fam.queries.size(),
                static_cast<unsigned long long>(fam.seed), fam.verified ? 1 : 0, targets, wrong, bad_rounds)};
}

// ---------------------------------------------------------------- 13

Verdict five_round() {
    std::size_t wrong = 0, bad_rounds = 0, nondeterministic = 0, graphs = 0, agreement_bad = 0;
    for (std::size_t n : {64u, 128u})
        for (std::size_t m : {1u, 3u}) {
            const auto pm = build_partition_matrix(n, m);
            const auto ser = kernels::serial::max_column_agreement(pm.entries, pm.rows, pm.cols);
            agreement_bad += !agreement_bound_holds(pm, m) || 2 * m * ser.max_agreement > pm.rows;
            for (std::size_t i = 0; i < 25; ++i) {
                const std::uint64_t seed = trial_seed(13000 + n * 10 + m, i);
                HiddenGraph g;
                if (i == 0) g = HiddenGraph(n, {});
                else if (m == 3 && i % 5 == 1) g = planted_star(n, 3, seed);
                else if (m == 3 && i % 5 == 2) {
                    const auto base = erdos_renyi_m(n, 1, seed);
                    const Vertex a = base.edges()[0].u, b = base.edges()[0].v;
                    const Vertex c = static_cast<Vertex>((b + 1 + seed % (n - 2)) % n);
                    g = (c == a || c == b) ? erdos_renyi_m(n, 3, seed) : HiddenGraph(n, {{a, b}, {b, c}, {a, c}});
                } else g = erdos_renyi_m(n, 1 + seed % m, seed);
                ++graphs;
                AlgorithmSpec spec;
                spec.id = "five-round-deterministic";
                spec.m = m;
                const auto t1 = run_trial(spec, g, 0, true);
                const auto t2 = run_trial(spec, g, 0, true);
                g_ledger.trial(t1, "13");
                g_ledger.trial(t2, "13");
                wrong += !t1.exact;
                bad_rounds += t1.rounds != 5;
                auto a = *t1.transcript, b = *t2.transcript;
                a.wall_ms = b.wall_ms = 0;
                std::ostringstream x, y;
                write_transcript(x, a);
                write_transcript(y, b);
                nondeterministic += x.str() != y.str();
            }
        }
    return {wrong == 0 && bad_rounds == 0 && nondeterministic == 0 && agreement_bad == 0,
            fmt("%zu graphs: %zu wrong, %zu not 5 rounds, %zu transcript mismatches, %zu agreement failures", graphs,
                wrong, bad_rounds, nondeterministic, agreement_bad)};
}

} // namespace

int main(int argc, char** argv) {
    std::string cache_dir = "acceptance_cache";
    std::set<int> only;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--only" && i + 1 < argc) {
            std::stringstream ss(argv[++i]);
            std::string tok;
            while (std::getline(ss, tok, ',')) only.insert(std::stoi(tok));
        } else {
            cache_dir = a;
        }
    }
    std::filesystem::create_directories(cache_dir);
    const std::string family_cache = cache_dir + "/two_round_family_n8_m1.txt";

    struct Criterion {
        int id;
        const char* name;
        double budget_s;
        std::function<Verdict()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "oracle exactness", 60, oracle_exactness},
        {2, "elimination soundness", 300, soundness},
        {3, "non-adaptive MC", 300, non_adaptive},
        {4, "two-round MC", 600, two_round},
        {5, "three-round MC", 600, three_round},
        {6, "large-n Las Vegas", 300, large_n},
        {7, "NO-rate curve properties", 300, curve_properties},
        {8, "Estimate window", 300, estimate_window},
        {9, "EstimateDegree window", 300, degree_window},
        {10, "unknown-m log-star pipeline", 900, unknown_m},
        {11, "one-or detector", 60, one_or},
        {12, "two-round deterministic", 600, [&] { return two_round_det(family_cache); }},
        {13, "five-round deterministic", 600, five_round},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        if (!only.empty() && !only.count(c.id)) continue;
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool pass = v.pass && secs < c.budget_s;
        failures += !pass;
        std::printf("%-4s %2d %-28s %s [%.1fs, budget %.0fs]\n", pass ? "PASS" : "FAIL", c.id, c.name,
                    v.detail.c_str(), secs, c.budget_s);
        std::fflush(stdout);
    }
    if (only.empty() || only.count(14)) {
        const bool pass = g_ledger.runs > 0 && g_ledger.bad == 0;
        failures += !pass;
        std::printf("%-4s %2d %-28s %zu runs checked, %zu mismatches%s\n", pass ? "PASS" : "FAIL", 14,
                    "query accounting", g_ledger.runs, g_ledger.bad,
                    g_ledger.bad ? (" (first in criterion " + g_ledger.first_bad + ")").c_str() : "");
    }
    return failures == 0 ? 0 : 1;
}
