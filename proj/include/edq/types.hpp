#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace edq {

/// Vertices are 0-indexed inside the library. File formats are 1-indexed.
using Vertex = std::uint32_t;

/// Unordered vertex pair, normalized so that u < v.
struct Edge {
    Vertex u = 0;
    Vertex v = 0;

    Edge() = default;
    Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

using EdgeList = std::vector<Edge>;

/// Bad arguments or configuration (CLI exit code 2).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A protocol or algorithm contract was broken at run time (CLI exit code 3).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

inline void require(bool ok, const std::string& what) {
    if (!ok) throw PreconditionError(what);
}

inline void ensure(bool ok, const std::string& what) {
    if (!ok) throw ContractViolation(what);
}

} // namespace edq
