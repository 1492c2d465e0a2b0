#include "edq/transcript.hpp"

#include <fstream>
#include <sstream>

namespace edq {

std::size_t Transcript::query_count() const {
    std::size_t c = 0;
    for (const auto& r : rounds) c += r.count;
    return c;
}

Transcript capture(const OracleSession& s, std::string alg, std::uint64_t seed, std::size_t m) {
    Transcript t;
    t.alg = std::move(alg);
    t.seed = seed;
    t.n = s.n();
    t.m = m;
    t.rounds = s.rounds();
    return t;
}

void write_transcript(std::ostream& out, const Transcript& t) {
    out << "#edq-transcript alg=" << t.alg << " seed=" << t.seed << " n=" << t.n << " m=" << t.m
        << '\n';
    const std::size_t wpq = words_for(t.n);
    for (std::size_t k = 0; k < t.rounds.size(); ++k) {
        const RoundLog& r = t.rounds[k];
        out << "#round " << k + 1 << ' ' << r.count << '\n';
        const auto batch = r.batch(wpq);
        for (std::size_t i = 0; i < r.count; ++i)
            out << k + 1 << '\t' << words_to_hex(batch[i], t.n) << '\t' << int(r.answers[i]) << '\n';
    }
    out << "#result success=" << (t.success ? 1 : 0) << " wall_ms=" << t.wall_ms
        << " restarts=" << t.restarts << " fallbacks=" << t.fallbacks << '\n';
    for (const Edge& e : t.result) out << "#edge " << e.u + 1 << ' ' << e.v + 1 << '\n';
}

namespace {

std::string field(const std::string& line, const std::string& key) {
    const auto pos = line.find(" " + key + "=");
    require(pos != std::string::npos, "transcript: missing field " + key);
    const auto start = pos + key.size() + 2;
    const auto end = line.find(' ', start);
    return line.substr(start, end == std::string::npos ? std::string::npos : end - start);
}

} // namespace

Transcript read_transcript(std::istream& in) {
    Transcript t;
    std::string line;
    require(static_cast<bool>(std::getline(in, line)) && line.rfind("#edq-transcript", 0) == 0,
            "transcript: missing header");
    t.alg = field(line, "alg");
    t.seed = std::stoull(field(line, "seed"));
    t.n = std::stoull(field(line, "n"));
    t.m = std::stoull(field(line, "m"));
    const std::size_t wpq = words_for(t.n);
    std::vector<std::uint64_t> buf(wpq);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.rfind("#round ", 0) == 0) {
            std::istringstream ls(line.substr(7));
            std::size_t k = 0, count = 0;
            ls >> k >> count;
            require(k == t.rounds.size() + 1, "transcript: rounds out of order");
            t.rounds.emplace_back();
            t.rounds.back().words.reserve(count * wpq);
            continue;
        }
        if (line.rfind("#result", 0) == 0) {
            t.success = field(line, "success") == "1";
            t.wall_ms = std::stod(field(line, "wall_ms"));
            t.restarts = std::stoull(field(line, "restarts"));
            t.fallbacks = std::stoull(field(line, "fallbacks"));
            continue;
        }
        if (line.rfind("#edge ", 0) == 0) {
            std::istringstream ls(line.substr(6));
            std::size_t u = 0, v = 0;
            ls >> u >> v;
            require(u >= 1 && v >= 1 && u <= t.n && v <= t.n, "transcript: bad edge");
            t.result.emplace_back(static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1));
            continue;
        }
        if (line[0] == '#') continue;
        std::istringstream ls(line);
        std::size_t k = 0;
        std::string hex;
        int a = -1;
        ls >> k >> hex >> a;
        require(!t.rounds.empty() && k == t.rounds.size(), "transcript: record outside its round");
        require(a == 0 || a == 1, "transcript: bad answer");
        hex_to_words(hex, t.n, buf);
        RoundLog& r = t.rounds.back();
        r.words.insert(r.words.end(), buf.begin(), buf.end());
        r.answers.push_back(static_cast<std::uint8_t>(a));
        ++r.count;
    }
    return t;
}

void write_transcript_file(const std::string& path, const Transcript& t) {
    std::ofstream out(path);
    require(static_cast<bool>(out), "cannot open " + path);
    write_transcript(out, t);
}

Transcript read_transcript_file(const std::string& path) {
    std::ifstream in(path);
    require(static_cast<bool>(in), "cannot open " + path);
    return read_transcript(in);
}

bool replay(const Transcript& t, const HiddenGraph& g) {
    if (g.n() != t.n) return false;
    const std::size_t wpq = words_for(t.n);
    for (const RoundLog& r : t.rounds) {
        std::vector<std::uint8_t> again(r.count);
        kernels::answer_queries(g, r.batch(wpq), again);
        if (again != r.answers) return false;
    }
    return true;
}

} // namespace edq
