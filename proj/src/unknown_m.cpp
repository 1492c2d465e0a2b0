#include "edq/unknown_m.hpp"

#include <cmath>

namespace edq {

std::size_t estimate_levels(double M) {
    require(M >= 1.0, "estimate: M must be at least 1");
    std::size_t i = 0;
    while (std::ldexp(1.0, 2 * static_cast<int>(i + 1)) <= 32.0 * M) ++i;
    return i + 1;
}

std::size_t degree_levels(double M) {
    require(M >= 1.0, "estimate_degree: M must be at least 1");
    std::size_t i = 0;
    while (std::ldexp(1.0, static_cast<int>(i + 1)) <= 16.0 * M) ++i;
    return i + 1;
}

std::size_t per_level_queries(std::size_t n, double c) {
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(c * std::log(static_cast<double>(n)))));
}

LevelProbe::LevelProbe(std::size_t n, std::size_t levels, std::size_t per_level, std::optional<Vertex> anchor,
                       Seed seed, double threshold)
    : n_(n), levels_(levels), per_level_(per_level), anchor_(anchor), seed_(seed), threshold_(threshold) {
    require(levels >= 1 && per_level >= 1, "LevelProbe: need at least one level and query");
}

void LevelProbe::submit(Round& round) {
    first_ = round.size();
    const VertexSet all = VertexSet::full(n_);
    for (std::size_t i = 0; i < levels_; ++i) {
        const std::size_t count = i == 0 ? 1 : per_level_;
        const std::uint64_t thr = probability_threshold(std::ldexp(1.0, -static_cast<int>(i)));
        for (std::size_t j = 0; j < count; ++j) {
            auto q = round.emplace();
            draw_p_random_into(thr, all.words(), seed_.key(i * per_level_ + j + 1), q);
            if (anchor_) q[*anchor_ >> 6] |= std::uint64_t{1} << (*anchor_ & 63);
        }
    }
}

EstimateOutcome LevelProbe::decode(const Round& round) const {
    EstimateOutcome out;
    std::size_t pos = first_;
    for (std::size_t i = 0; i < levels_; ++i) {
        const std::size_t count = i == 0 ? 1 : per_level_;
        std::size_t no = 0;
        for (std::size_t j = 0; j < count; ++j) no += round.answer(pos + j) ? 0 : 1;
        pos += count;
        if (i == 0 && no == 1) out.empty_graph = true;
        if (static_cast<double>(no) > threshold_ * static_cast<double>(count)) {
            out.level = i;
            out.p = std::ldexp(1.0, -static_cast<int>(i) - 1);
            return out;
        }
    }
    out.escalated = true;
    return out;
}

EstimateOutcome estimate(OracleSession& s, double M, std::uint64_t seed, const Constants& c) {
    LevelProbe probe(s.n(), estimate_levels(M), per_level_queries(s.n(), c.c_est), std::nullopt,
                     Seed{seed, stream_id("estimate", 0, 0)}, 0.5);
    auto round = s.open_round();
    probe.submit(round);
    round.close();
    return probe.decode(round);
}

EstimateOutcome estimate_degree(OracleSession& s, Vertex u, double M, std::uint64_t seed, const Constants& c) {
    require(u < s.n(), "estimate_degree: vertex out of range");
    LevelProbe probe(s.n(), degree_levels(M), per_level_queries(s.n(), c.c_deg), u,
                     Seed{seed, stream_id("estimate-degree", 0, u)}, std::exp(-1.0));
    auto round = s.open_round();
    probe.submit(round);
    round.close();
    return probe.decode(round);
}

double iterated_log(double n, std::size_t j) {
    double x = n;
    for (std::size_t i = 0; i < j; ++i) x = std::max(2.0, std::log2(x));
    return x;
}

std::size_t log_star(double n) {
    std::size_t j = 0;
    double x = n;
    while (x > 2.0) {
        x = std::log2(x);
        ++j;
    }
    return j;
}

std::vector<double> tower_bounds(double n, std::size_t k, double top) {
    require(k >= 1, "tower_bounds: k must be positive");
    std::vector<double> out;
    for (std::size_t j = k; j-- > 1;) {
        const double l = iterated_log(n, j);
        out.push_back(l * l);
    }
    out.push_back(top);
    return out;
}

KEstimate k_estimate(OracleSession& s, std::size_t k, std::uint64_t seed, const Constants& c) {
    const double n = static_cast<double>(s.n());
    KEstimate ke;
    const auto bounds = tower_bounds(n, k, n * n);
    for (std::size_t j = 0; j < bounds.size(); ++j) {
        LevelProbe probe(s.n(), estimate_levels(bounds[j]), per_level_queries(s.n(), c.c_est), std::nullopt,
                         Seed{seed, stream_id("k-estimate", static_cast<std::uint32_t>(j), 0)}, 0.5);
        auto round = s.open_round();
        probe.submit(round);
        round.close();
        ++ke.rounds;
        ke.queries += probe.queries();
        ke.outcome = probe.decode(round);
        if (ke.outcome.empty_graph || !ke.outcome.escalated) return ke;
    }
    return ke;
}

std::size_t split_repetitions(std::size_t n, double p, const Constants& c) {
    return static_cast<std::size_t>(std::ceil(c.c_split / (p * p) * std::log(static_cast<double>(n))));
}

SplitResult split(OracleSession& s, double p, std::uint64_t seed, const Constants& c) {
    require(p > 0.0 && p <= 1.0, "split: p must lie in (0,1]");
    const std::size_t n = s.n();
    SplitResult out;
    out.t = std::max<std::size_t>(1, split_repetitions(n, p, c));
    const VertexSet all = VertexSet::full(n);
    const std::uint64_t thr = probability_threshold(p);
    const Seed sd{seed, stream_id("split", 0, 0)};
    auto round = s.open_round();
    for (std::size_t i = 1; i <= out.t; ++i) draw_p_random_into(thr, all.words(), sd.key(i), round.emplace());
    round.close();
    out.H = CandidateEdgeSet::complete(n);
    out.H.apply_no_queries(round.batch(), round.answers());
    for (Vertex v = 0; v < n; ++v)
        (static_cast<double>(out.H.degree(v)) * p >= 3.0 ? out.V1 : out.V2).push_back(v);
    return out;
}

KEstimateDegree k_estimate_degree(OracleSession& s, const std::vector<Vertex>& us, std::size_t k,
                                  std::uint64_t seed, const Constants& c) {
    const double n = static_cast<double>(s.n());
    KEstimateDegree out;
    out.probes.assign(us.size(), 0.0);
    std::vector<std::size_t> open(us.size());
    for (std::size_t i = 0; i < us.size(); ++i) open[i] = i;
    const auto bounds = tower_bounds(n, k, n);
    for (std::size_t j = 0; j < bounds.size() && !open.empty(); ++j) {
        const std::size_t levels = degree_levels(bounds[j]);
        std::vector<LevelProbe> probes;
        auto round = s.open_round();
        for (std::size_t i : open) {
            probes.emplace_back(s.n(), levels, per_level_queries(s.n(), c.c_deg), us[i],
                                Seed{seed, stream_id("k-estimate-degree", static_cast<std::uint32_t>(j), us[i])},
                                std::exp(-1.0));
            probes.back().submit(round);
            out.queries += probes.back().queries();
        }
        round.close();
        ++out.rounds;
        std::vector<std::size_t> still;
        for (std::size_t x = 0; x < open.size(); ++x) {
            const auto o = probes[x].decode(round);
            if (o.escalated)
                still.push_back(open[x]);
            else
                out.probes[open[x]] = o.p;
        }
        open = std::move(still);
        if (j + 1 == bounds.size())
            for (std::size_t i : open) out.probes[i] = std::ldexp(1.0, -static_cast<int>(levels) - 1);
    }
    return out;
}

std::size_t find_repetitions(std::size_t n, double p, const Constants& c) {
    return std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(c.c_find / p * std::log(static_cast<double>(n)))));
}

std::size_t find_edges(OracleSession& s, CandidateEdgeSet& H, const std::vector<Vertex>& us,
                       const std::vector<double>& probes, std::uint64_t seed, const Constants& c) {
    require(us.size() == probes.size(), "find_edges: one probe per vertex");
    const std::size_t n = s.n();
    const VertexSet all = VertexSet::full(n);
    std::vector<std::size_t> firsts, counts;
    auto round = s.open_round();
    for (std::size_t k = 0; k < us.size(); ++k) {
        const std::size_t t = find_repetitions(n, probes[k], c);
        const std::uint64_t thr = probability_threshold(probes[k]);
        const Seed sd{seed, stream_id("find-edges", 0, us[k])};
        firsts.push_back(round.size());
        counts.push_back(t);
        for (std::size_t i = 1; i <= t; ++i) {
            auto q = round.emplace();
            draw_p_random_into(thr, all.words(), sd.key(i), q);
            q[us[k] >> 6] |= std::uint64_t{1} << (us[k] & 63);
        }
    }
    round.close();
    std::size_t total = 0;
    for (std::size_t k = 0; k < us.size(); ++k) {
        total += counts[k];
        for (std::size_t i = 0; i < counts[k]; ++i) {
            if (round.answer(firsts[k] + i)) continue;
            for_each_bit(round.query(firsts[k] + i), [&](Vertex v) { H.remove(us[k], v); });
        }
    }
    return total;
}

LearnResult pipeline_unknown_m(OracleSession& s, PipelineMode mode, std::uint64_t seed, const Constants& c) {
    LearnResult out;
    const std::size_t n = s.n();
    const std::size_t k = mode.log_star ? std::max<std::size_t>(1, log_star(static_cast<double>(n))) : mode.k;
    require(k >= 1, "pipeline: k must be positive");

    const auto ke = k_estimate(s, k, seed, c);
    out.predict(ke.queries);
    if (ke.outcome.empty_graph) return out;
    if (ke.outcome.escalated) {
        // Not reachable: M_0 = n^2 exceeds m. Keep a valid probe anyway.
        out.notes.push_back("estimate escalated past M_0");
    }
    const double p = ke.outcome.escalated ? 1.0 / static_cast<double>(n) : ke.outcome.p;

    auto sp = split(s, p, seed, c);
    out.predict(sp.t);
    if (!sp.V1.empty()) {
        const auto kd = k_estimate_degree(s, sp.V1, k, seed, c);
        out.predict(kd.queries);
        out.predict(find_edges(s, sp.H, sp.V1, kd.probes, seed, c));
    }

    const EdgeList survivors = sp.H.pairs();
    auto round = s.open_round();
    for (const Edge& e : survivors) {
        auto q = round.emplace();
        q[e.u >> 6] |= std::uint64_t{1} << (e.u & 63);
        q[e.v >> 6] |= std::uint64_t{1} << (e.v & 63);
    }
    round.close();
    out.predict(survivors.size());
    for (std::size_t i = 0; i < survivors.size(); ++i)
        if (round.answer(i)) out.edges.push_back(survivors[i]);
    if (out.edges.size() != survivors.size()) {
        out.fallbacks = 1;
        out.notes.push_back("verification rejected " + std::to_string(survivors.size() - out.edges.size()) +
                            " pairs");
    }
    return out;
}

} // namespace edq
