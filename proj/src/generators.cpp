#include "edq/generators.hpp"
#include "edq/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace edq {

namespace {

CounterRng rng_for(std::uint64_t seed, std::string_view what) { return CounterRng(Seed{seed, stream_id(what, 0, 0)}); }

std::size_t pairs_of(std::size_t n) { return n * (n - 1) / 2; }

/// k distinct vertices of [0, n) outside `avoid`, in draw order.
std::vector<Vertex> distinct_vertices(std::size_t n, std::size_t k, const std::set<Vertex>& avoid, CounterRng& rng) {
    require(n >= avoid.size() + k, "generator: not enough vertices");
    std::set<Vertex> used = avoid;
    std::vector<Vertex> out;
    while (out.size() < k) {
        const auto v = static_cast<Vertex>(rng.below(n));
        if (used.insert(v).second) out.push_back(v);
    }
    return out;
}

} // namespace

bool seeded_generator(const std::string& g) { return g != "from-file"; }

HiddenGraph erdos_renyi_m(std::size_t n, std::size_t m, std::uint64_t seed) {
    require(m <= pairs_of(n), "erdos-renyi-m: m exceeds binom(n,2)");
    auto rng = rng_for(seed, "erdos-renyi-m");
    std::set<Edge> chosen;
    const bool complement = 2 * m > pairs_of(n);
    const std::size_t want = complement ? pairs_of(n) - m : m;
    while (chosen.size() < want) {
        const auto a = static_cast<Vertex>(rng.below(n));
        const auto b = static_cast<Vertex>(rng.below(n));
        if (a != b) chosen.insert(Edge(a, b));
    }
    EdgeList edges;
    if (!complement) {
        edges.assign(chosen.begin(), chosen.end());
    } else {
        for (Vertex a = 0; a < n; ++a)
            for (Vertex b = a + 1; b < n; ++b)
                if (!chosen.count(Edge(a, b))) edges.emplace_back(a, b);
    }
    return HiddenGraph(n, edges);
}

HiddenGraph planted_star(std::size_t n, std::size_t d, std::uint64_t seed, long long center) {
    require(d + 1 <= n, "planted-star: needs d + 1 <= n");
    auto rng = rng_for(seed, "planted-star");
    const Vertex c = center >= 0 ? static_cast<Vertex>(center) : static_cast<Vertex>(rng.below(n));
    require(c < n, "planted-star: centre out of range");
    EdgeList edges;
    for (Vertex leaf : distinct_vertices(n, d, {c}, rng)) edges.emplace_back(c, leaf);
    return HiddenGraph(n, edges);
}

HiddenGraph double_star(std::size_t n, std::size_t d1, std::size_t d2, std::uint64_t seed) {
    require(d1 + d2 + 2 <= n, "double-star: needs d1 + d2 + 2 <= n");
    auto rng = rng_for(seed, "double-star");
    const auto centres = distinct_vertices(n, 2, {}, rng);
    const auto leaves = distinct_vertices(n, d1 + d2, {centres[0], centres[1]}, rng);
    EdgeList edges;
    for (std::size_t i = 0; i < leaves.size(); ++i) edges.emplace_back(centres[i < d1 ? 0 : 1], leaves[i]);
    return HiddenGraph(n, edges);
}

HiddenGraph random_matching(std::size_t n, std::size_t k, std::uint64_t seed) {
    require(2 * k <= n, "matching: needs 2k <= n");
    auto rng = rng_for(seed, "matching");
    const auto vs = distinct_vertices(n, 2 * k, {}, rng);
    EdgeList edges;
    for (std::size_t i = 0; i < k; ++i) edges.emplace_back(vs[2 * i], vs[2 * i + 1]);
    return HiddenGraph(n, edges);
}

HiddenGraph lower_bound_lbnamc(std::size_t n, std::size_t m, std::size_t i, std::vector<Vertex> J,
                               std::uint64_t seed) {
    const std::size_t half = m / 2;
    require(half >= 1 && i < half, "lower-bound-LBNAMC: need m >= 2 and i < m/2");
    require(n >= 2 * half, "lower-bound-LBNAMC: need n >= m");
    if (J.empty()) {
        auto rng = rng_for(seed, "lower-bound-LBNAMC");
        std::set<Vertex> avoid;
        for (Vertex v = 0; v < half; ++v) avoid.insert(v);
        J = distinct_vertices(n, half, avoid, rng);
    }
    require(J.size() == half, "lower-bound-LBNAMC: |J| must be m/2");
    EdgeList edges;
    for (Vertex x = 0; x < half; ++x)
        if (x != i) edges.emplace_back(static_cast<Vertex>(i), x);
    for (Vertex j : J) {
        require(j >= half && j < n, "lower-bound-LBNAMC: J must lie in [m/2, n)");
        edges.emplace_back(static_cast<Vertex>(i), j);
    }
    return HiddenGraph(n, edges);
}

std::size_t lvlbtr_default_d(std::size_t n, std::size_t m) {
    const double md = static_cast<double>(m);
    const double d = std::pow(md, 2.0 / 3.0) * std::cbrt(std::log2(md)) /
                     (1024.0 * std::cbrt(std::log2(static_cast<double>(n))));
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(d)));
}

HiddenGraph lower_bound_lvlbtr(std::size_t n, std::size_t m, std::size_t d, std::uint64_t seed) {
    const std::size_t r = m / 2;
    require(r >= 1 && d <= r, "lower-bound-LVLBTR: need m >= 2 and d <= m/2");
    const std::size_t s = r - d;
    require(n >= r + s + 1, "lower-bound-LVLBTR: n too small");
    auto rng = rng_for(seed, "lower-bound-LVLBTR");
    const auto t = static_cast<Vertex>(rng.below(r));
    std::set<Vertex> taken;
    for (Vertex v = 0; v < r; ++v) taken.insert(v);
    const auto U = distinct_vertices(n, s, taken, rng);
    taken.insert(U.begin(), U.end());
    std::vector<Vertex> rest;
    for (Vertex v = 0; v < n; ++v)
        if (!taken.count(v)) rest.push_back(v);
    std::set<Edge> edges;
    for (Vertex j = 0; j < r; ++j)
        if (j != t) edges.insert(Edge(t, j));
    for (Vertex u : U) edges.insert(Edge(t, u));
    for (std::size_t k = 0; k < d && !rest.empty(); ++k) edges.insert(Edge(t, rest[rng.below(rest.size())]));
    return HiddenGraph(n, EdgeList(edges.begin(), edges.end()));
}

InstanceSpec instance_from_kv(const KeyValues& kv, const std::string& prefix) {
    InstanceSpec spec;
    spec.generator = kv.get(prefix + "generator", "erdos-renyi-m");
    spec.n = kv.get_u64(prefix + "n", 0);
    spec.m = kv.get_u64(prefix + "m", 0);
    spec.seed = kv.get_u64(prefix + "seed", 1);
    for (const auto& [k, v] : kv.values())
        if (k.rfind(prefix, 0) == 0) spec.params.set(k.substr(prefix.size()), v);
    return spec;
}

HiddenGraph generate(const InstanceSpec& spec) {
    const auto& g = spec.generator;
    const auto& p = spec.params;
    if (g == "from-file") return read_graph_file(p.require_string("file"));
    require(spec.n >= 1, "generate: n must be positive");
    if (g == "erdos-renyi-m") return erdos_renyi_m(spec.n, spec.m, spec.seed);
    if (g == "planted-star") {
        const long long centre = p.has("center") ? static_cast<long long>(p.get_u64("center", 1)) - 1 : -1;
        return planted_star(spec.n, p.get_u64("d", spec.m), spec.seed, centre);
    }
    if (g == "double-star") {
        const std::size_t d1 = p.get_u64("d", spec.m / 2);
        return double_star(spec.n, d1, p.get_u64("d2", spec.m - d1), spec.seed);
    }
    if (g == "matching") return random_matching(spec.n, spec.m, spec.seed);
    if (g == "lower-bound-LBNAMC") {
        std::vector<Vertex> J;
        if (p.has("J")) {
            std::istringstream js(p.get("J", ""));
            std::string tok;
            while (std::getline(js, tok, ',')) J.push_back(static_cast<Vertex>(std::stoul(tok) - 1));
        }
        return lower_bound_lbnamc(spec.n, spec.m, p.get_u64("i", 1) - 1, J, spec.seed);
    }
    if (g == "lower-bound-LVLBTR")
        return lower_bound_lvlbtr(spec.n, spec.m, p.get_u64("d", lvlbtr_default_d(spec.n, spec.m)), spec.seed);
    throw PreconditionError("unknown generator " + g);
}

} // namespace edq
