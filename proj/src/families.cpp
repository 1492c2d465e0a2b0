#include "edq/deterministic.hpp"
#include "edq/random.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace edq {

namespace {

double binom_d(double n, double k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (double i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

std::uint64_t binom_u(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 r = 1;
    for (std::uint64_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return static_cast<std::uint64_t>(r);
}

} // namespace

// ---------------------------------------------------------------- two-round family

QueryFamily sample_two_round_family(std::size_t n, std::size_t m, std::size_t t, std::uint64_t seed,
                                    double p) {
    require(n >= 2 && m >= 1 && t >= 1, "sample_two_round_family: need n >= 2, m >= 1, t >= 1");
    QueryFamily f;
    f.n = n;
    f.m = m;
    f.seed = seed;
    f.p = p > 0.0 ? p : 1.0 / static_cast<double>(m);
    f.degenerate = f.p >= 1.0;
    const PRandomSchedule sched(f.p, t, VertexSet::full(n), Seed{seed, stream_id("two-round-family", 1, 0)});
    for (std::size_t i = 1; i <= t; ++i) f.queries.push_back(sched.draw(i));
    return f;
}

QueryFamily all_pairs_family(std::size_t n, std::size_t m) {
    QueryFamily f;
    f.n = n;
    f.m = m;
    f.sampled = false;
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b) f.queries.push_back(VertexSet::of(n, {a, b}));
    return f;
}

CoveringReport verify_covering(QueryFamily& family) {
    require(family.m >= 1, "verify_covering: m must be positive");
    CoveringReport rep;
    const std::size_t n = family.n;
    const double pairs = binom_d(static_cast<double>(n), 2);
    const double graphs = binom_d(pairs, static_cast<double>(family.m));
    rep.pairs_to_enumerate = graphs * binom_d(pairs - static_cast<double>(family.m), static_cast<double>(family.m));
    if (graphs > kCoveringGuard) {
        rep.feasible = false;
        family.verified = false;
        return rep;
    }
    EdgeList pair_list;
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b) pair_list.emplace_back(a, b);
    const std::size_t tw = words_for(family.queries.size());
    std::vector<std::vector<std::uint64_t>> cover(pair_list.size(), std::vector<std::uint64_t>(tw, 0));
    for (std::size_t j = 0; j < family.queries.size(); ++j) {
        const auto& q = family.queries[j];
        for (std::size_t e = 0; e < pair_list.size(); ++e)
            if (q.contains(pair_list[e].u) && q.contains(pair_list[e].v))
                cover[e][j >> 6] |= std::uint64_t{1} << (j & 63);
    }
    const auto cx = kernels::find_uncovered(cover, family.m);
    rep.holds = !cx.has_value();
    if (cx) {
        for (auto i : cx->graph_pairs) rep.graph.push_back(pair_list[i]);
        for (auto i : cx->uncovered_pairs) rep.uncovered.push_back(pair_list[i]);
    }
    family.verified = rep.holds;
    return rep;
}

std::optional<QueryFamily> search_two_round_family(std::size_t n, std::size_t m, std::size_t t,
                                                   std::uint64_t seed0, std::size_t tries, double p) {
    for (std::size_t i = 0; i < tries; ++i) {
        auto f = sample_two_round_family(n, m, t, seed0 + i, p);
        const auto rep = verify_covering(f);
        require(rep.feasible, "search_two_round_family: verification infeasible at this size");
        if (rep.holds) return f;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------- one-or

std::vector<Vertex> OneOrCode::support(std::size_t j) const {
    std::vector<Vertex> out;
    for (std::size_t v = 0; v < assignment.size(); ++v)
        if ((assignment[v] >> j) & 1) out.push_back(static_cast<Vertex>(v));
    return out;
}

OneOrCode build_one_or_code(std::size_t n) {
    require(n >= 2, "build_one_or_code: n must be at least 2");
    OneOrCode code;
    code.n = n;
    code.t = 1;
    while (binom_u(2 * code.t, code.t) < n) ++code.t;
    require(code.t <= 32, "build_one_or_code: n too large");
    // Lexicographic t-subsets of [2t]: elements as positions, first subset {0..t-1}.
    const std::size_t N = 2 * code.t, t = code.t;
    std::vector<std::size_t> c(t);
    for (std::size_t i = 0; i < t; ++i) c[i] = i;
    for (std::size_t v = 0; v < n; ++v) {
        std::uint64_t mask = 0;
        for (auto x : c) mask |= std::uint64_t{1} << x;
        code.assignment.push_back(mask);
        std::size_t i = t;
        while (i > 0 && c[i - 1] == N - t + i - 1) --i;
        if (i == 0) break;
        ++c[i - 1];
        for (std::size_t j = i; j < t; ++j) c[j] = c[j - 1] + 1;
    }
    return code;
}

std::optional<std::uint64_t> subset_rank(std::uint64_t mask, std::size_t t) {
    if (static_cast<std::size_t>(std::popcount(mask)) != t) return std::nullopt;
    const std::size_t N = 2 * t;
    if (N < 64 && (mask >> N) != 0) return std::nullopt;
    std::uint64_t rank = 0;
    std::int64_t prev = -1;
    std::size_t i = 0;
    for (std::size_t x = 0; x < N; ++x) {
        if (!((mask >> x) & 1)) continue;
        ++i;
        for (auto y = static_cast<std::size_t>(prev + 1); y < x; ++y) rank += binom_u(N - 1 - y, t - i);
        prev = static_cast<std::int64_t>(x);
    }
    return rank;
}

OneOrDecode decode_one_or(std::span<const std::uint8_t> answers, const OneOrCode& code) {
    require(answers.size() == code.queries(), "decode_one_or: wrong answer count");
    std::uint64_t mask = 0;
    for (std::size_t j = 0; j < answers.size(); ++j)
        if (answers[j]) mask |= std::uint64_t{1} << j;
    if (mask == 0) return {OneOrDecode::empty, 0};
    const auto r = subset_rank(mask, code.t);
    if (!r || *r >= code.n) return {OneOrDecode::error, 0};
    return {OneOrDecode::vertex, static_cast<Vertex>(*r)};
}

// ---------------------------------------------------------------- partition matrix

bool is_prime(std::size_t x) {
    if (x < 2) return false;
    for (std::size_t d = 2; d * d <= x; ++d)
        if (x % d == 0) return false;
    return true;
}

std::vector<std::uint32_t> rs_entries(std::size_t n, std::size_t q, std::size_t k, std::size_t rows) {
    require(is_prime(q) && rows <= q, "rs_entries: need prime q and at most q evaluation points");
    std::vector<std::uint32_t> e(rows * n);
    std::vector<std::uint64_t> digits(k);
    for (std::size_t v = 0; v < n; ++v) {
        std::uint64_t x = v;
        for (std::size_t i = 0; i < k; ++i) {
            digits[i] = x % q;
            x /= q;
        }
        require(x == 0, "rs_entries: q^k < n");
        for (std::size_t r = 0; r < rows; ++r) {
            std::uint64_t acc = 0; // Horner
            for (std::size_t i = k; i-- > 0;) acc = (acc * r + digits[i]) % q;
            e[r * n + v] = static_cast<std::uint32_t>(acc);
        }
    }
    return e;
}

PartitionMatrix build_partition_matrix(std::size_t n, std::size_t m) {
    require(n >= 2 && m >= 1, "build_partition_matrix: need n >= 2, m >= 1");
    for (std::size_t q = 2;; ++q) {
        if (!is_prime(q)) continue;
        std::size_t k = 1;
        for (std::size_t cap = q; cap < n; cap *= q) ++k;
        const std::size_t t = std::max<std::size_t>(1, 2 * m * (k - 1));
        if (t > q) continue;
        PartitionMatrix pm;
        pm.rows = t;
        pm.cols = n;
        pm.alphabet = q;
        pm.q = q;
        pm.k = k;
        pm.entries = rs_entries(n, q, k, t);
        return pm;
    }
}

kernels::AgreementResult max_agreement(const PartitionMatrix& pm) {
    if (pm.cols < 2) return {};
    return kernels::max_column_agreement(pm.entries, pm.rows, pm.cols);
}

bool agreement_bound_holds(const PartitionMatrix& pm, std::size_t m) {
    return max_agreement(pm).max_agreement * 2 * m <= pm.rows;
}

// ---------------------------------------------------------------- disjunct

namespace {

constexpr double kDisjunctGuard = 5.0e6;

std::vector<std::vector<std::uint64_t>> column_rows(const DisjunctMatrix& dm) {
    const std::size_t rw = words_for(dm.rows.size());
    std::vector<std::vector<std::uint64_t>> cols(dm.cols, std::vector<std::uint64_t>(rw, 0));
    for (std::size_t r = 0; r < dm.rows.size(); ++r)
        for_each_bit(dm.rows[r], [&](Vertex c) { cols[c][r >> 6] |= std::uint64_t{1} << (r & 63); });
    return cols;
}

/// True if some choice of `left` more columns from [from, cols) \ {skip} covers `rest`.
bool coverable(const std::vector<std::vector<std::uint64_t>>& cols, std::size_t skip,
               std::vector<std::uint64_t> rest, std::size_t from, std::size_t left) {
    bool empty = true;
    for (auto w : rest) empty = empty && w == 0;
    if (empty) return true;
    if (left == 0) return false;
    for (std::size_t c = from; c < cols.size(); ++c) {
        if (c == skip) continue;
        std::vector<std::uint64_t> next = rest;
        for (std::size_t w = 0; w < next.size(); ++w) next[w] &= ~cols[c][w];
        if (coverable(cols, skip, std::move(next), c + 1, left - 1)) return true;
    }
    return false;
}

DisjunctMatrix identity_matrix(std::size_t cols, std::size_t d) {
    DisjunctMatrix dm;
    dm.cols = cols;
    dm.d = d;
    dm.identity = true;
    dm.verified = true;
    for (std::size_t c = 0; c < cols; ++c) {
        std::vector<std::uint64_t> row(words_for(cols), 0);
        row[c >> 6] |= std::uint64_t{1} << (c & 63);
        dm.rows.push_back(std::move(row));
    }
    return dm;
}

} // namespace

std::optional<bool> verify_disjunct(const DisjunctMatrix& dm) {
    if (dm.cols == 0) return true;
    const double work = static_cast<double>(dm.cols) *
                        binom_d(static_cast<double>(dm.cols - 1), static_cast<double>(std::min(dm.d, dm.cols - 1)));
    if (work > kDisjunctGuard) return std::nullopt;
    const auto cols = column_rows(dm);
    for (std::size_t j = 0; j < dm.cols; ++j)
        if (coverable(cols, j, cols[j], 0, dm.d)) return false;
    return true;
}

DisjunctMatrix build_disjunct_matrix(std::size_t cols, std::size_t d, std::uint64_t seed) {
    require(cols >= 1, "build_disjunct_matrix: need at least one column");
    if (d + 1 >= cols) return identity_matrix(cols, d);
    const double p = 1.0 / static_cast<double>(d + 1);
    const double lc = std::log(static_cast<double>(cols));
    auto rows = static_cast<std::size_t>(std::ceil(2.0 * static_cast<double>(d + 1) * lc));
    for (std::size_t attempt = 0; rows < cols; ++attempt) {
        DisjunctMatrix dm;
        dm.cols = cols;
        dm.d = d;
        dm.seed = hash_combine(seed, attempt);
        const PRandomSchedule sched(p, rows, VertexSet::full(cols), Seed{dm.seed, stream_id("disjunct", 0, 0)});
        for (std::size_t r = 1; r <= rows; ++r) {
            const auto q = sched.draw(r);
            dm.rows.emplace_back(q.words().begin(), q.words().end());
        }
        const auto ok = verify_disjunct(dm);
        if (!ok) break; // beyond the guard: fall back to identity
        if (*ok) {
            dm.verified = true;
            return dm;
        }
        if (attempt % 4 == 3) rows += std::max<std::size_t>(1, rows / 4);
    }
    return identity_matrix(cols, d);
}

std::vector<std::size_t> comp_decode(const DisjunctMatrix& dm, std::span<const std::uint8_t> answers) {
    require(answers.size() == dm.rows.size(), "comp_decode: wrong answer count");
    std::vector<std::uint64_t> alive(words_for(dm.cols), 0);
    for (std::size_t c = 0; c < dm.cols; ++c) alive[c >> 6] |= std::uint64_t{1} << (c & 63);
    for (std::size_t r = 0; r < dm.rows.size(); ++r)
        if (!answers[r])
            for (std::size_t w = 0; w < alive.size(); ++w) alive[w] &= ~dm.rows[r][w];
    std::vector<std::size_t> out;
    for_each_bit(alive, [&](Vertex c) { out.push_back(c); });
    return out;
}

} // namespace edq
