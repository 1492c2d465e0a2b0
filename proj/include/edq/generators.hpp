#pragma once

#include "edq/graph.hpp"
#include "edq/kv.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace edq {

/// generator: erdos-renyi-m | planted-star | double-star | matching |
///            lower-bound-LBNAMC | lower-bound-LVLBTR | from-file
struct InstanceSpec {
    std::string generator = "erdos-renyi-m";
    std::size_t n = 0;
    std::size_t m = 0;
    std::uint64_t seed = 0;
    KeyValues params; // generator-specific: d, d2, center, i, J, file
};

/// Reads generator, n, m, seed and passes every other key through as a parameter.
InstanceSpec instance_from_kv(const KeyValues& kv, const std::string& prefix = "");

HiddenGraph generate(const InstanceSpec& spec);
/// True for generators whose output depends on the seed.
bool seeded_generator(const std::string& generator);

HiddenGraph erdos_renyi_m(std::size_t n, std::size_t m, std::uint64_t seed);
/// Star with d leaves; centre chosen by the seed unless given (0-based).
HiddenGraph planted_star(std::size_t n, std::size_t d, std::uint64_t seed, long long center = -1);
/// Two vertex-disjoint stars with d1 and d2 leaves.
HiddenGraph double_star(std::size_t n, std::size_t d1, std::size_t d2, std::uint64_t seed);
HiddenGraph random_matching(std::size_t n, std::size_t k, std::uint64_t seed);
/// {i} x ([m/2] \ {i})  plus  {i, j} for j in J. Vertices 0-based; J is drawn from
/// [m/2, n) by the seed when empty.
HiddenGraph lower_bound_lbnamc(std::size_t n, std::size_t m, std::size_t i, std::vector<Vertex> J,
                               std::uint64_t seed);
/// Star on v_t over V' (first m/2 vertices), s = m/2 - d fresh vertices U and d draws W
/// (repeats collapse). t is uniform in [0, m/2).
HiddenGraph lower_bound_lvlbtr(std::size_t n, std::size_t m, std::size_t d, std::uint64_t seed);
/// d from the distribution's formula, at least 1.
std::size_t lvlbtr_default_d(std::size_t n, std::size_t m);

} // namespace edq
