#include "edq/curve.hpp"
#include "edq/kernels.hpp"

#include <cmath>

namespace edq {

NoRateCurve::NoRateCurve(const HiddenGraph& g) : n_(g.n()), profile_(kernels::independent_set_profile(g)) {}

double NoRateCurve::no_rate(double p) const {
    double s = 0.0;
    for (std::size_t k = 0; k < profile_.size(); ++k)
        s += static_cast<double>(profile_[k]) * std::pow(p, static_cast<double>(k)) *
             std::pow(1.0 - p, static_cast<double>(n_ - k));
    return s;
}

double NoRateCurve::p_star(double tol) const {
    require(profile_.size() > 2 && profile_[2] < n_ * (n_ - 1) / 2, "p_star: graph is empty");
    return bisect_decreasing([this](double p) { return no_rate(p); }, 0.5, 0.0, 1.0, tol);
}

double NoRateCurve::no_rate_with(const HiddenGraph& g, Vertex u, double p) {
    VertexSet drop = VertexSet::of(g.n(), {u});
    for (Vertex x : g.adjacent(u)) drop.insert(x);
    std::vector<Vertex> keep;
    std::vector<std::int64_t> index(g.n(), -1);
    for (Vertex v = 0; v < g.n(); ++v)
        if (!drop.contains(v)) {
            index[v] = static_cast<std::int64_t>(keep.size());
            keep.push_back(v);
        }
    const double outside = std::pow(1.0 - p, static_cast<double>(g.degree(u)));
    if (keep.empty()) return outside;
    EdgeList sub;
    for (const Edge& e : g.edges())
        if (index[e.u] >= 0 && index[e.v] >= 0)
            sub.emplace_back(static_cast<Vertex>(index[e.u]), static_cast<Vertex>(index[e.v]));
    return outside * NoRateCurve(HiddenGraph(keep.size(), sub)).no_rate(p);
}

double bisect_decreasing(const std::function<double(double)>& f, double target, double lo, double hi,
                         double tol) {
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) > target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

namespace closed_form {

double star_no_rate(std::size_t d, double p) {
    return 1.0 - p * (1.0 - std::pow(1.0 - p, static_cast<double>(d)));
}

double star_center_no_rate(std::size_t d, double p) { return std::pow(1.0 - p, static_cast<double>(d)); }

double star_p_star(std::size_t d, double tol) {
    return bisect_decreasing([d](double p) { return star_no_rate(d, p); }, 0.5, 0.0, 1.0, tol);
}

double star_p_u(std::size_t d) { return 1.0 - std::exp(-1.0 / static_cast<double>(d)); }

double matching_no_rate(std::size_t k, double p) { return std::pow(1.0 - p * p, static_cast<double>(k)); }

} // namespace closed_form

} // namespace edq
