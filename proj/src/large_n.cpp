#include "edq/deterministic.hpp"
#include "edq/known_m.hpp"

#include <cmath>
#include <map>

namespace edq {

namespace {

struct SideDecode {
    enum Kind { empty, vertex, inconsistent } kind = empty;
    Vertex v = 0;
};

std::size_t code_bits(std::size_t size) {
    std::size_t b = 1;
    while ((std::size_t{1} << b) < size) ++b;
    return b;
}

void add_query(Round& round, const VertexSet& base, const std::vector<Vertex>& extra) {
    auto q = round.emplace();
    const auto bw = base.words();
    for (std::size_t w = 0; w < q.size(); ++w) q[w] = bw[w];
    for (Vertex x : extra) q[x >> 6] |= std::uint64_t{1} << (x & 63);
}

/// Complementary bit-code: for each bit b, (base + {x: bit b of x's index is 1}) and
/// (base + {bit b is 0}). Returns the number of queries.
std::size_t submit_bit_code(Round& round, const VertexSet& base, const std::vector<Vertex>& cell) {
    const std::size_t bits = code_bits(cell.size());
    for (std::size_t b = 0; b < bits; ++b)
        for (int want = 1; want >= 0; --want) {
            std::vector<Vertex> extra;
            for (std::size_t i = 0; i < cell.size(); ++i)
                if (static_cast<int>((i >> b) & 1) == want) extra.push_back(cell[i]);
            add_query(round, base, extra);
        }
    return 2 * bits;
}

SideDecode decode_bit_code(const Round& round, std::size_t first, const std::vector<Vertex>& cell) {
    const std::size_t bits = code_bits(cell.size());
    std::size_t silent = 0, index = 0;
    for (std::size_t b = 0; b < bits; ++b) {
        const bool one = round.answer(first + 2 * b);
        const bool zero = round.answer(first + 2 * b + 1);
        if (one && zero) return {SideDecode::inconsistent, 0};
        if (!one && !zero) ++silent;
        if (one) index |= std::size_t{1} << b;
    }
    if (silent == bits) return {SideDecode::empty, 0};
    if (silent != 0 || index >= cell.size()) return {SideDecode::inconsistent, 0};
    return {SideDecode::vertex, cell[index]};
}

const OneOrCode& code_for(std::map<std::size_t, OneOrCode>& cache, std::size_t size) {
    const std::size_t key = std::max<std::size_t>(size, 2);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, build_one_or_code(key)).first;
    return it->second;
}

std::size_t submit_one_or(Round& round, const VertexSet& base, const std::vector<Vertex>& cell,
                          const OneOrCode& code) {
    for (std::size_t j = 0; j < code.queries(); ++j) {
        std::vector<Vertex> extra;
        for (Vertex local : code.support(j))
            if (local < cell.size()) extra.push_back(cell[local]);
        add_query(round, base, extra);
    }
    return code.queries();
}

SideDecode decode_one_or_side(const Round& round, std::size_t first, const std::vector<Vertex>& cell,
                              const OneOrCode& code) {
    std::vector<std::uint8_t> a(code.queries());
    for (std::size_t j = 0; j < a.size(); ++j) a[j] = round.answer(first + j) ? 1 : 0;
    const auto d = decode_one_or(a, code);
    if (d.kind == OneOrDecode::empty) return {SideDecode::empty, 0};
    if (d.kind == OneOrDecode::error || d.v >= cell.size()) return {SideDecode::inconsistent, 0};
    return {SideDecode::vertex, cell[d.v]};
}

LearnResult run_fallback(OracleSession& s, std::size_t m, LearnResult out, const std::string& why) {
    auto fb = nonadaptive_fallback(s, m);
    out.edges = std::move(fb.edges);
    out.predict(fb.predicted_queries);
    out.fallbacks = 1;
    out.notes.push_back("fallback: " + why);
    return out;
}

} // namespace

std::size_t lv_large_n_cells(std::size_t m) { return 2 * m * m * m * m * (2 * m - 1); }

LearnResult two_round_large_n(OracleSession& s, std::size_t m, std::size_t w, std::uint64_t seed,
                              const Constants& c) {
    LearnResult out;
    if (degenerate_empty(s, m, out)) {
        s.open_round().close();
        return out;
    }
    require(w > m, "two-round large-n: w must exceed m");
    const std::size_t n = s.n();
    const double u_real = std::pow(static_cast<double>(w), static_cast<double>(c.large_n_exponent));
    const std::size_t u = u_real >= static_cast<double>(n) ? n : static_cast<std::size_t>(u_real);
    if (u < static_cast<std::size_t>(u_real)) out.notes.push_back("cell count capped at n");
    const auto part = partition_vertices(n, std::max<std::size_t>(u, 1), hash_combine(seed, 0x70617274ULL));
    const double md = static_cast<double>(m);
    const auto ep = make_elimination_params(part.size(), m, 1.0 / (2.0 * md), md, c.delta);
    if (ep.clamped) out.notes.push_back(ep.report);
    const auto H = lifted_elimination_round(s, ep, part, Seed{seed, stream_id("two-round-large-n", 1, 0)});
    out.predict(ep.t);

    const EdgeList set_edges = H.pairs();
    std::vector<std::size_t> firsts;
    auto round = s.open_round();
    for (const Edge& se : set_edges) {
        firsts.push_back(round.size());
        out.predict(submit_bit_code(round, part.cell_sets[se.u], part.cells[se.v]));
        out.predict(submit_bit_code(round, part.cell_sets[se.v], part.cells[se.u]));
    }
    round.close();

    CandidateEdgeSet result(n);
    for (std::size_t k = 0; k < set_edges.size(); ++k) {
        const Edge& se = set_edges[k];
        const auto in_v = decode_bit_code(round, firsts[k], part.cells[se.v]);
        const auto in_u = decode_bit_code(round, firsts[k] + 2 * code_bits(part.cells[se.v].size()),
                                          part.cells[se.u]);
        if (in_v.kind == SideDecode::empty && in_u.kind == SideDecode::empty) continue;
        if (in_v.kind == SideDecode::vertex && in_u.kind == SideDecode::vertex) {
            result.insert(in_u.v, in_v.v);
            continue;
        }
        out.success = false;
        out.notes.push_back("inconsistent endpoint decoding (cell collision)");
    }
    out.edges = result.pairs();
    return out;
}

LearnResult three_round_lv_large_n(OracleSession& s, std::size_t m, std::uint64_t seed,
                                   const Constants& c) {
    LearnResult out;
    if (degenerate_empty(s, m, out)) return out;
    const std::size_t n = s.n();
    const std::size_t u = std::min(lv_large_n_cells(m), n);
    if (u < lv_large_n_cells(m)) out.notes.push_back("cell count capped at n");
    if (u <= m + 1) return run_fallback(s, m, std::move(out), "too few cells to detect same-cell edges");

    const auto part = partition_vertices(n, u, hash_combine(seed, 0x70617274ULL));
    const double md = static_cast<double>(m);
    const auto ep = make_elimination_params(u, m, 1.0 / (2.0 * md), md, c.delta);
    if (ep.clamped) out.notes.push_back(ep.report);
    const auto H = lifted_elimination_round(s, ep, part, Seed{seed, stream_id("three-round-lv-large-n", 1, 0)});
    out.predict(ep.t);

    // A cell holding an edge is in every YES query it joins, so it keeps all u-1 set edges.
    for (std::size_t cell = 0; cell < u; ++cell)
        if (H.degree(static_cast<Vertex>(cell)) > m)
            return run_fallback(s, m, std::move(out), "cell with more than m set edges");

    std::map<std::size_t, OneOrCode> codes;
    const EdgeList set_edges = H.pairs();
    std::vector<std::size_t> firsts;
    auto round = s.open_round();
    for (const Edge& se : set_edges) {
        firsts.push_back(round.size());
        out.predict(submit_one_or(round, part.cell_sets[se.u], part.cells[se.v],
                                  code_for(codes, part.cells[se.v].size())));
        out.predict(submit_one_or(round, part.cell_sets[se.v], part.cells[se.u],
                                  code_for(codes, part.cells[se.u].size())));
    }
    round.close();

    CandidateEdgeSet result(n);
    std::vector<std::int64_t> decoded_in_cell(u, -1);
    bool second_subcase = false;
    for (std::size_t k = 0; k < set_edges.size(); ++k) {
        const Edge& se = set_edges[k];
        const auto& cv = code_for(codes, part.cells[se.v].size());
        const auto in_v = decode_one_or_side(round, firsts[k], part.cells[se.v], cv);
        const auto in_u = decode_one_or_side(round, firsts[k] + cv.queries(), part.cells[se.u],
                                             code_for(codes, part.cells[se.u].size()));
        if (in_v.kind == SideDecode::empty && in_u.kind == SideDecode::empty) continue;
        if (in_v.kind != SideDecode::vertex || in_u.kind != SideDecode::vertex)
            return run_fallback(s, m, std::move(out), "one-or decoder reported ERROR");
        for (auto [cell, v] : {std::pair{se.u, in_u.v}, std::pair{se.v, in_v.v}}) {
            if (decoded_in_cell[cell] >= 0 && decoded_in_cell[cell] != static_cast<std::int64_t>(v))
                second_subcase = true;
            decoded_in_cell[cell] = v;
        }
        result.insert(in_u.v, in_v.v);
    }
    if (second_subcase) out.notes.push_back("two positive-degree vertices share a cell");
    out.edges = result.pairs();
    return out;
}

} // namespace edq
