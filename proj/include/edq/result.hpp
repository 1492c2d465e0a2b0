#pragma once

#include "edq/types.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace edq {

/// What an algorithm returns. `success` is the algorithm's own verdict (false on a
/// detected failure); correctness against the hidden graph is judged by the caller.
struct LearnResult {
    EdgeList edges;
    bool success = true;
    std::size_t restarts = 0;
    std::size_t fallbacks = 0;
    /// Closed-form query count from the algorithm's own plan, when it has one.
    std::size_t predicted_queries = 0;
    bool has_prediction = false;
    std::vector<std::string> notes;

    void predict(std::size_t q) {
        predicted_queries += q;
        has_prediction = true;
    }
};

} // namespace edq
