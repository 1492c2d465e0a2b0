#pragma once

// Every hidden Theta(log n) constant in one place. A repetition count written
// c*ln n in the algorithms reads its c from here.

#include <cstddef>

namespace edq {

struct Constants {
    double c_est = 8.0;   // Estimate: queries per level
    double c_deg = 8.0;   // EstimateDegree and three-round degree probes: queries per level
    double c_split = 4.0; // Split: (1/p')^2 ln n multiplier
    double c_find = 4.0;  // FindEdges: (1/p'_u) ln n multiplier
    double c_learn = 8.0; // three-round round-3 learner: d * (ln n + ln 1/delta) multiplier
    double c_family = 32.0; // sampled two-round family: m^2 ln n multiplier
    double delta = 0.01;  // default failure budget for known-m algorithms
    unsigned large_n_exponent = 3; // u = w^exponent cells in the two-round large-n algorithm
    std::size_t max_restarts = 64; // Las Vegas restart cap before giving up on the bound
};

inline const Constants& default_constants() {
    static const Constants c;
    return c;
}

} // namespace edq
