#include "edq/matrix_io.hpp"

#include <fstream>
#include <sstream>

namespace edq {

std::uint64_t MatrixFile::content_hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto feed = [&h](std::uint64_t x) {
        for (int i = 0; i < 8; ++i) {
            h ^= (x >> (8 * i)) & 0xff;
            h *= 0x100000001b3ULL;
        }
    };
    for (std::uint64_t x : {std::uint64_t(n), std::uint64_t(m), std::uint64_t(w), std::uint64_t(t), seed}) feed(x);
    for (const auto& r : bool_rows)
        for (auto x : r) feed(x);
    for (auto e : entries) feed(e);
    return h == 0 ? 1 : h;
}

namespace {

std::size_t row_width(const MatrixFile& f) { return f.kind == "disjunct" || f.kind == "two-round-family" || f.kind == "one-or" ? f.n : 0; }

} // namespace

void write_matrix(std::ostream& out, const MatrixFile& f) {
    out << f.kind << ' ' << f.n << ' ' << f.m << ' ' << f.w << ' ' << f.t << ' ' << f.seed << ' ' << f.hash << '\n';
    if (f.kind == "partition") {
        for (std::size_t r = 0; r < f.t; ++r) {
            for (std::size_t c = 0; c < f.n; ++c) out << (c ? " " : "") << f.entries[r * f.n + c];
            out << '\n';
        }
        return;
    }
    for (const auto& r : f.bool_rows) out << words_to_hex(r, row_width(f)) << '\n';
}

MatrixFile read_matrix(std::istream& in) {
    MatrixFile f;
    std::string line;
    require(static_cast<bool>(std::getline(in, line)), "matrix file: missing header");
    std::istringstream hs(line);
    require(static_cast<bool>(hs >> f.kind >> f.n >> f.m >> f.w >> f.t >> f.seed >> f.hash), "matrix file: bad header");
    require(f.kind == "two-round-family" || f.kind == "one-or" || f.kind == "partition" || f.kind == "disjunct",
            "matrix file: unknown kind " + f.kind);
    if (f.kind == "partition") {
        f.entries.resize(f.t * f.n);
        for (auto& e : f.entries) require(static_cast<bool>(in >> e), "matrix file: truncated partition rows");
        return f;
    }
    for (std::size_t r = 0; r < f.t; ++r) {
        require(static_cast<bool>(std::getline(in, line)), "matrix file: truncated rows");
        std::vector<std::uint64_t> row(words_for(f.n));
        hex_to_words(line, f.n, row);
        f.bool_rows.push_back(std::move(row));
    }
    return f;
}

void write_matrix_file(const std::string& path, const MatrixFile& f) {
    std::ofstream out(path);
    require(static_cast<bool>(out), "cannot open " + path);
    write_matrix(out, f);
}

MatrixFile read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    require(static_cast<bool>(in), "cannot open " + path);
    return read_matrix(in);
}

MatrixFile to_matrix_file(const QueryFamily& fam) {
    MatrixFile f;
    f.kind = "two-round-family";
    f.n = fam.n;
    f.m = fam.m;
    f.t = fam.queries.size();
    f.seed = fam.seed;
    for (const auto& q : fam.queries) f.bool_rows.emplace_back(q.words().begin(), q.words().end());
    if (fam.verified) f.hash = f.content_hash();
    return f;
}

MatrixFile to_matrix_file(const OneOrCode& c) {
    MatrixFile f;
    f.kind = "one-or";
    f.n = c.n;
    f.t = c.queries();
    for (std::size_t j = 0; j < c.queries(); ++j) {
        const auto q = VertexSet::of(c.n, c.support(j));
        f.bool_rows.emplace_back(q.words().begin(), q.words().end());
    }
    f.hash = f.content_hash();
    return f;
}

MatrixFile to_matrix_file(const PartitionMatrix& pm, std::size_t m, bool verified) {
    MatrixFile f;
    f.kind = "partition";
    f.n = pm.cols;
    f.m = m;
    f.w = pm.alphabet;
    f.t = pm.rows;
    f.entries = pm.entries;
    if (verified) f.hash = f.content_hash();
    return f;
}

MatrixFile to_matrix_file(const DisjunctMatrix& dm) {
    MatrixFile f;
    f.kind = "disjunct";
    f.n = dm.cols;
    f.m = dm.d;
    f.t = dm.rows.size();
    f.seed = dm.seed;
    f.bool_rows = dm.rows;
    if (dm.verified) f.hash = f.content_hash();
    return f;
}

QueryFamily family_from(const MatrixFile& f) {
    require(f.kind == "two-round-family", "not a two-round family file");
    QueryFamily fam;
    fam.n = f.n;
    fam.m = f.m;
    fam.seed = f.seed;
    for (const auto& r : f.bool_rows) fam.queries.push_back(VertexSet::from_words(f.n, r));
    fam.verified = f.claims_verified();
    return fam;
}

DisjunctMatrix disjunct_from(const MatrixFile& f) {
    require(f.kind == "disjunct", "not a disjunct matrix file");
    DisjunctMatrix dm;
    dm.cols = f.n;
    dm.d = f.m;
    dm.seed = f.seed;
    dm.rows = f.bool_rows;
    dm.verified = f.claims_verified();
    return dm;
}

PartitionMatrix partition_from(const MatrixFile& f) {
    require(f.kind == "partition", "not a partition matrix file");
    PartitionMatrix pm;
    pm.rows = f.t;
    pm.cols = f.n;
    pm.alphabet = f.w;
    pm.q = f.w;
    pm.entries = f.entries;
    for (auto e : pm.entries) require(e < f.w, "partition entry outside the alphabet");
    return pm;
}

VerifyOutcome verify_matrix(const MatrixFile& f) {
    VerifyOutcome out;
    std::ostringstream os;
    if (f.kind == "two-round-family") {
        auto fam = family_from(f);
        const auto rep = verify_covering(fam);
        if (!rep.feasible) {
            os << "refused: " << rep.pairs_to_enumerate << " (G, E') pairs exceed the guard";
        } else if (rep.holds) {
            out.ok = true;
            os << "covering property holds";
        } else {
            os << "counterexample G =";
            for (const Edge& e : rep.graph) os << " {" << e.u + 1 << ',' << e.v + 1 << '}';
            os << " uncovered =";
            for (const Edge& e : rep.uncovered) os << " {" << e.u + 1 << ',' << e.v + 1 << '}';
        }
    } else if (f.kind == "one-or") {
        const auto code = build_one_or_code(f.n);
        const auto stored = to_matrix_file(code);
        out.ok = stored.bool_rows == f.bool_rows;
        os << (out.ok ? "matches the canonical code" : "differs from the canonical code");
    } else if (f.kind == "partition") {
        const auto pm = partition_from(f);
        const auto a = max_agreement(pm);
        out.ok = a.max_agreement * 2 * std::max<std::size_t>(f.m, 1) <= pm.rows;
        os << "max agreement " << a.max_agreement << " (columns " << a.col_a + 1 << ", " << a.col_b + 1
           << "), bound " << pm.rows / (2 * std::max<std::size_t>(f.m, 1));
    } else {
        const auto dm = disjunct_from(f);
        const auto ok = verify_disjunct(dm);
        if (!ok)
            os << "refused: exhaustive disjunctness check exceeds the guard";
        else {
            out.ok = *ok;
            os << (*ok ? "d-disjunct" : "not d-disjunct");
        }
    }
    out.detail = os.str();
    return out;
}

} // namespace edq
