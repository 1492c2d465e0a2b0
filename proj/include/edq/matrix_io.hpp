#pragma once

// Cache files for verified constructions.
// Header: "kind n m w t seed verification-hash"; then t rows. Boolean rows are
// packed hex (same encoding as transcripts); partition rows are integers.
// The hash is FNV-1a over the rows and is 0 for unverified content.

#include "edq/deterministic.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace edq {

struct MatrixFile {
    std::string kind; // two-round-family | one-or | partition | disjunct
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t w = 0;
    std::size_t t = 0;
    std::uint64_t seed = 0;
    std::uint64_t hash = 0;
    std::vector<std::vector<std::uint64_t>> bool_rows;
    std::vector<std::uint32_t> entries;

    std::uint64_t content_hash() const;
    bool claims_verified() const { return hash != 0 && hash == content_hash(); }
};

void write_matrix(std::ostream& out, const MatrixFile& f);
MatrixFile read_matrix(std::istream& in);
void write_matrix_file(const std::string& path, const MatrixFile& f);
MatrixFile read_matrix_file(const std::string& path);

MatrixFile to_matrix_file(const QueryFamily& f);
MatrixFile to_matrix_file(const OneOrCode& c);
MatrixFile to_matrix_file(const PartitionMatrix& pm, std::size_t m, bool verified);
MatrixFile to_matrix_file(const DisjunctMatrix& dm);

/// verified is taken from the file only when the hash matches the content.
QueryFamily family_from(const MatrixFile& f);
DisjunctMatrix disjunct_from(const MatrixFile& f);
PartitionMatrix partition_from(const MatrixFile& f);

struct VerifyOutcome {
    bool ok = false;
    std::string detail;
};
/// Re-runs the kind's verification from scratch.
VerifyOutcome verify_matrix(const MatrixFile& f);

} // namespace edq
