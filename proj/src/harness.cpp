#include "edq/harness.hpp"
#include "edq/random.hpp"

#include <omp.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace edq {

Constants constants_from_kv(const KeyValues& kv, Constants c) {
    c.c_est = kv.get_double("c_est", c.c_est);
    c.c_deg = kv.get_double("c_deg", c.c_deg);
    c.c_split = kv.get_double("c_split", c.c_split);
    c.c_find = kv.get_double("c_find", c.c_find);
    c.c_learn = kv.get_double("c_learn", c.c_learn);
    c.c_family = kv.get_double("c_family", c.c_family);
    c.delta = kv.get_double("delta", c.delta);
    c.large_n_exponent = static_cast<unsigned>(kv.get_u64("large_n_exponent", c.large_n_exponent));
    c.max_restarts = kv.get_u64("max_restarts", c.max_restarts);
    require(c.delta > 0.0 && c.delta < 1.0, "delta must lie in (0,1)");
    return c;
}

ExperimentPlan plan_from_kv(const KeyValues& kv) {
    ExperimentPlan p;
    p.alg = kv.require_string("alg");
    bool known = false;
    for (const auto& id : algorithm_ids()) known = known || id == p.alg;
    require(known, "unknown algorithm " + p.alg);
    p.instance = instance_from_kv(kv, "instance.");
    p.trials = kv.get_u64("trials", 1);
    require(p.trials >= 1, "trials must be at least 1");
    p.master_seed = kv.get_u64("seed", 1);
    p.m = kv.get_u64("m", 0);
    p.k = kv.get_u64("k", 1);
    p.w = kv.get_u64("w", 0);
    p.constants = constants_from_kv(kv);
    p.fresh_instance = kv.get_bool("fresh_instance", seeded_generator(p.instance.generator));
    p.threads = kv.get_u64("threads", 0);
    p.trials_csv = kv.get("trials_csv", "");
    p.aggregate_csv = kv.get("aggregate_csv", "");
    p.series_tsv = kv.get("series_tsv", "");
    p.transcript_dir = kv.get("transcript_dir", "");
    return p;
}

ExperimentPlan read_plan_file(const std::string& path) { return plan_from_kv(KeyValues::read_file(path)); }

Interval wilson(std::size_t successes, std::size_t trials, double z) {
    if (trials == 0) return {0.0, 1.0};
    const double nn = static_cast<double>(trials);
    const double ph = static_cast<double>(successes) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double centre = (ph + z2 / (2.0 * nn)) / denom;
    const double half = z * std::sqrt(ph * (1.0 - ph) / nn + z2 / (4.0 * nn * nn)) / denom;
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

Aggregate aggregate(const std::string& alg, const std::vector<TrialRow>& rows) {
    Aggregate a;
    a.alg = alg;
    a.trials = rows.size();
    if (rows.empty()) return a;
    a.n = rows.front().n;
    a.m = rows.front().m;
    a.min_queries = rows.front().queries;
    double q = 0, r = 0, w = 0, mlogn = 0;
    for (const auto& row : rows) {
        a.successes += row.success ? 1 : 0;
        q += static_cast<double>(row.queries);
        r += static_cast<double>(row.rounds);
        w += row.wall_ms;
        mlogn += static_cast<double>(row.m) * std::log2(static_cast<double>(row.n));
        a.min_queries = std::min(a.min_queries, row.queries);
        a.max_queries = std::max(a.max_queries, row.queries);
        a.max_rounds = std::max(a.max_rounds, row.rounds);
        a.restarts += row.restarts;
        a.fallbacks += row.fallbacks;
    }
    const double nn = static_cast<double>(rows.size());
    a.success_rate = static_cast<double>(a.successes) / nn;
    a.ci = wilson(a.successes, a.trials);
    a.mean_queries = q / nn;
    a.mean_rounds = r / nn;
    a.mean_wall_ms = w / nn;
    a.ratio_m_log_n = mlogn > 0 ? q / mlogn : 0.0;
    return a;
}

RunStats run(const ExperimentPlan& plan) {
    RunStats st;
    st.rows.resize(plan.trials);
    std::vector<std::string> errors(plan.trials);
    std::vector<std::uint8_t> acct(plan.trials, 1), budget(plan.trials, 1);
    const HiddenGraph shared = plan.fresh_instance ? HiddenGraph(1, {}) : generate(plan.instance);
    if (!plan.transcript_dir.empty()) std::filesystem::create_directories(plan.transcript_dir);
    const int threads = plan.threads ? static_cast<int>(plan.threads) : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (std::ptrdiff_t ti = 0; ti < static_cast<std::ptrdiff_t>(plan.trials); ++ti) {
        const auto trial = static_cast<std::size_t>(ti);
        TrialRow& row = st.rows[trial];
        row.trial = trial;
        row.seed = trial_seed(plan.master_seed, trial);
        try {
            HiddenGraph g = shared;
            if (plan.fresh_instance) {
                InstanceSpec spec = plan.instance;
                spec.seed = hash_combine(row.seed, 0x696e7374ULL);
                g = generate(spec);
            }
            row.n = g.n();
            row.m = g.m();
            AlgorithmSpec as;
            as.id = plan.alg;
            as.m = plan.m ? plan.m : g.m();
            as.k = plan.k;
            as.w = plan.w;
            as.constants = plan.constants;
            const bool keep = !plan.transcript_dir.empty();
            auto out = run_trial(as, g, row.seed, keep);
            row.success = out.exact;
            row.queries = out.queries;
            row.rounds = out.rounds;
            row.restarts = out.result.restarts;
            row.fallbacks = out.result.fallbacks;
            row.wall_ms = out.wall_ms;
            acct[trial] = out.accounting_ok;
            budget[trial] = out.budget_ok;
            if (keep)
                write_transcript_file(plan.transcript_dir + "/trial_" + std::to_string(trial) + ".tsv", *out.transcript);
        } catch (const std::exception& e) {
            errors[trial] = e.what();
        }
    }
    for (std::size_t i = 0; i < plan.trials; ++i) {
        st.accounting_failures += acct[i] ? 0 : 1;
        st.budget_failures += budget[i] ? 0 : 1;
        if (!errors[i].empty()) {
            ++st.errors;
            st.error_messages.push_back("trial " + std::to_string(i) + ": " + errors[i]);
        }
    }
    st.agg = aggregate(plan.alg, st.rows);
    auto open = [](const std::string& path) {
        std::ofstream f(path);
        require(static_cast<bool>(f), "cannot open " + path);
        return f;
    };
    if (!plan.trials_csv.empty()) {
        auto f = open(plan.trials_csv);
        write_trials_csv(f, st.rows);
    }
    if (!plan.aggregate_csv.empty()) {
        auto f = open(plan.aggregate_csv);
        write_aggregate_csv(f, {st.agg});
    }
    if (!plan.series_tsv.empty()) {
        auto f = open(plan.series_tsv);
        write_series_tsv(f, st.rows);
    }
    return st;
}

void write_trials_csv(std::ostream& out, const std::vector<TrialRow>& rows) {
    out << "trial,seed,success,queries,rounds,restarts,wall_ms,fallbacks,n,m\n";
    out << std::setprecision(17);
    for (const auto& r : rows)
        out << r.trial << ',' << r.seed << ',' << (r.success ? 1 : 0) << ',' << r.queries << ',' << r.rounds << ','
            << r.restarts << ',' << r.wall_ms << ',' << r.fallbacks << ',' << r.n << ',' << r.m << '\n';
}

std::vector<TrialRow> read_trials_csv(std::istream& in) {
    std::vector<TrialRow> rows;
    std::string line;
    require(static_cast<bool>(std::getline(in, line)) && line.rfind("trial,seed,success", 0) == 0,
            "trials csv: bad header");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string cell;
        std::vector<std::string> c;
        while (std::getline(ls, cell, ',')) c.push_back(cell);
        require(c.size() == 10, "trials csv: expected 10 columns");
        TrialRow r;
        r.trial = std::stoull(c[0]);
        r.seed = std::stoull(c[1]);
        r.success = c[2] == "1";
        r.queries = std::stoull(c[3]);
        r.rounds = std::stoull(c[4]);
        r.restarts = std::stoull(c[5]);
        r.wall_ms = std::stod(c[6]);
        r.fallbacks = std::stoull(c[7]);
        r.n = std::stoull(c[8]);
        r.m = std::stoull(c[9]);
        rows.push_back(r);
    }
    return rows;
}

void write_aggregate_csv(std::ostream& out, const std::vector<Aggregate>& aggs) {
    out << "alg,n,m,trials,successes,success_rate,wilson_lo,wilson_hi,mean_queries,min_queries,max_queries,"
           "mean_rounds,max_rounds,restarts,fallbacks,mean_wall_ms,queries_per_m_log2n\n";
    out << std::setprecision(10);
    for (const auto& a : aggs)
        out << a.alg << ',' << a.n << ',' << a.m << ',' << a.trials << ',' << a.successes << ',' << a.success_rate << ','
            << a.ci.lo << ',' << a.ci.hi << ',' << a.mean_queries << ',' << a.min_queries << ',' << a.max_queries << ','
            << a.mean_rounds << ',' << a.max_rounds << ',' << a.restarts << ',' << a.fallbacks << ','
            << a.mean_wall_ms << ',' << a.ratio_m_log_n << '\n';
}

void write_series_tsv(std::ostream& out, const std::vector<TrialRow>& rows) {
    out << "# m_log2_n\tqueries\n";
    for (const auto& r : rows)
        out << static_cast<double>(r.m) * std::log2(static_cast<double>(r.n)) << '\t' << r.queries << '\n';
}

} // namespace edq
