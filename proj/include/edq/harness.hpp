#pragma once

#include "edq/algorithms.hpp"
#include "edq/generators.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace edq {

/// Keys (one per line, key=value):
///   alg, trials, seed, delta, m (0 = true edge count), k, w, threads,
///   c_est, c_deg, c_split, c_find, c_learn, c_family,
///   instance.generator, instance.n, instance.m, instance.seed, instance.<param>,
///   fresh_instance (1 = new instance per trial from the trial seed),
///   trials_csv, aggregate_csv, series_tsv, transcript_dir
struct ExperimentPlan {
    std::string alg;
    InstanceSpec instance;
    std::size_t trials = 1;
    std::uint64_t master_seed = 1;
    std::size_t m = 0;
    std::size_t k = 1;
    std::size_t w = 0;
    Constants constants;
    bool fresh_instance = true;
    std::size_t threads = 0; // 0 = all available
    std::string trials_csv;
    std::string aggregate_csv;
    std::string series_tsv;
    std::string transcript_dir;
};

ExperimentPlan plan_from_kv(const KeyValues& kv);
ExperimentPlan read_plan_file(const std::string& path);
Constants constants_from_kv(const KeyValues& kv, Constants base = {});

struct TrialRow {
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    bool success = false; // output equals the hidden graph
    std::size_t queries = 0;
    std::size_t rounds = 0;
    std::size_t restarts = 0;
    std::size_t fallbacks = 0;
    double wall_ms = 0.0;
    std::size_t n = 0;
    std::size_t m = 0; // true edge count of the trial's instance
};

struct Interval {
    double lo = 0.0;
    double hi = 1.0;
};
/// Wilson score interval; z = 1.96 for 95%.
Interval wilson(std::size_t successes, std::size_t trials, double z = 1.96);

struct Aggregate {
    std::string alg;
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t trials = 0;
    std::size_t successes = 0;
    double success_rate = 0.0;
    Interval ci;
    double mean_queries = 0.0;
    std::size_t min_queries = 0;
    std::size_t max_queries = 0;
    double mean_rounds = 0.0;
    std::size_t max_rounds = 0;
    std::size_t restarts = 0;
    std::size_t fallbacks = 0;
    double mean_wall_ms = 0.0;
    /// mean_queries / (m log2 n); 0 when m log2 n is 0.
    double ratio_m_log_n = 0.0;
};

/// Pure function of the rows (n and m from the first row).
Aggregate aggregate(const std::string& alg, const std::vector<TrialRow>& rows);

struct RunStats {
    std::vector<TrialRow> rows;
    Aggregate agg;
    std::size_t accounting_failures = 0;
    std::size_t budget_failures = 0;
    std::size_t errors = 0; // per-trial precondition or contract errors
    std::vector<std::string> error_messages;
};

/// Runs all trials (OpenMP across sessions), writes the requested outputs.
RunStats run(const ExperimentPlan& plan);

void write_trials_csv(std::ostream& out, const std::vector<TrialRow>& rows);
std::vector<TrialRow> read_trials_csv(std::istream& in);
void write_aggregate_csv(std::ostream& out, const std::vector<Aggregate>& aggs);
/// Two columns: m log2 n, queries; one line per trial.
void write_series_tsv(std::ostream& out, const std::vector<TrialRow>& rows);

} // namespace edq
