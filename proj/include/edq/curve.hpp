#pragma once

// Exact NO-rate curves. N_G(p) is the probability that a p-random query is
// independent; computed from the independent-set profile (n <= 26) or closed forms.

#include "edq/graph.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace edq {

class NoRateCurve {
public:
    explicit NoRateCurve(const HiddenGraph& g);

    const std::vector<std::uint64_t>& profile() const { return profile_; }
    /// sum_k a_k p^k (1-p)^(n-k)
    double no_rate(double p) const;
    /// Root of N_G(p) = 1/2 by bisection (graph must be nonempty).
    double p_star(double tol = 1e-12) const;

    /// Pr[Q + {u} is independent] = (1-p)^deg(u) * N_{G - u - Gamma(u)}(p).
    static double no_rate_with(const HiddenGraph& g, Vertex u, double p);

private:
    std::size_t n_;
    std::vector<std::uint64_t> profile_;
};

/// x in [lo, hi] with f(x) = target for decreasing f, to within tol.
double bisect_decreasing(const std::function<double(double)>& f, double target, double lo, double hi,
                         double tol = 1e-12);

namespace closed_form {
/// Star K_{1,d}: N(p) = 1 - p (1 - (1-p)^d).
double star_no_rate(std::size_t d, double p);
/// Star centre: N_u(p) = (1-p)^d.
double star_center_no_rate(std::size_t d, double p);
double star_p_star(std::size_t d, double tol = 1e-12);
/// Root of (1-p)^d = 1/e: 1 - e^{-1/d}.
double star_p_u(std::size_t d);
/// k disjoint edges: (1 - p^2)^k.
double matching_no_rate(std::size_t k, double p);
} // namespace closed_form

} // namespace edq
