#pragma once

#include "edq/oracle.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace edq {

struct Transcript {
    std::string alg;
    std::uint64_t seed = 0;
    std::size_t n = 0;
    std::size_t m = 0; // edge bound handed to the algorithm (0 when unknown)
    std::vector<RoundLog> rounds;
    EdgeList result;
    bool success = false;
    double wall_ms = 0.0;
    std::size_t restarts = 0;
    std::size_t fallbacks = 0;

    std::size_t query_count() const;
};

/// Copies the session's rounds; result fields are filled by the caller.
Transcript capture(const OracleSession& s, std::string alg, std::uint64_t seed, std::size_t m);

/// Header "#edq-transcript alg= seed= n= m=", then per round a "#round k count" line
/// followed by "k<TAB>hex<TAB>answer" records, then "#result" and "#edge" trailers.
void write_transcript(std::ostream& out, const Transcript& t);
Transcript read_transcript(std::istream& in);
void write_transcript_file(const std::string& path, const Transcript& t);
Transcript read_transcript_file(const std::string& path);

/// Re-asks every recorded query against g; true iff all answers match bit-exactly.
bool replay(const Transcript& t, const HiddenGraph& g);

} // namespace edq
