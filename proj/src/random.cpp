#include "edq/random.hpp"

#include <cmath>

namespace edq {

std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) {
    return mix64(a ^ mix64(b + 0x9e3779b97f4a7c15ULL));
}

std::uint64_t Seed::key(std::uint64_t index) const {
    return hash_combine(hash_combine(value, stream), index);
}

std::uint64_t stream_id(std::string_view alg, std::uint32_t round, std::uint32_t phase) {
    // FNV-1a over the id, then fold in the indices.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : alg) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return hash_combine(hash_combine(h, round), phase);
}

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial) {
    return hash_combine(hash_combine(master, 0x747269616cULL), trial);
}

std::uint64_t restart_seed(std::uint64_t seed, std::uint64_t restart) {
    return hash_combine(hash_combine(seed, 0x72657374617274ULL), restart);
}

std::uint64_t CounterRng::below(std::uint64_t bound) {
    require(bound > 0, "CounterRng::below: bound must be positive");
    const std::uint64_t limit = max() - max() % bound;
    for (;;) {
        const std::uint64_t x = (*this)();
        if (x < limit) return x % bound;
    }
}

std::uint64_t probability_threshold(double p) {
    require(p >= 0.0 && p <= 1.0, "probability must lie in [0,1]");
    if (p >= 1.0) return std::uint64_t{1} << 53;
    return static_cast<std::uint64_t>(std::ldexp(p, 53));
}

void draw_p_random_into(std::uint64_t threshold, std::span<const std::uint64_t> domain,
                        std::uint64_t key, std::span<std::uint64_t> out) {
    const std::size_t words = domain.size();
    if (threshold >= (std::uint64_t{1} << 53)) {
        for (std::size_t b = 0; b < words; ++b) out[b] = domain[b];
        return;
    }
    // Lowest set bit of the threshold: below it the comparison is decided.
    const int stop = threshold == 0 ? 53 : std::countr_zero(threshold);
    for (std::size_t b = 0; b < words; ++b) {
        if (domain[b] == 0 || threshold == 0) {
            out[b] = 0;
            continue;
        }
        std::uint64_t less = 0;
        std::uint64_t open = ~std::uint64_t{0};
        const std::uint64_t base = static_cast<std::uint64_t>(b) * 53;
        for (int level = 52; level >= stop && open; --level) {
            const std::uint64_t r = counter_word(key, base + static_cast<std::uint64_t>(52 - level));
            if ((threshold >> level) & 1) {
                less |= open & ~r;
                open &= r;
            } else {
                open &= ~r;
            }
        }
        out[b] = less & domain[b];
    }
}

PRandomSchedule::PRandomSchedule(double p_, std::size_t t_, VertexSet domain_, Seed seed_)
    : p(p_), t(t_), domain(std::move(domain_)), seed(seed_) {
    require(p > 0.0 && p <= 1.0, "PRandomSchedule: p must lie in (0,1]");
    require(t >= 1, "PRandomSchedule: t must be positive");
    require(!domain.empty(), "PRandomSchedule: domain must be nonempty");
    threshold_ = probability_threshold(p);
}

void PRandomSchedule::draw_into(std::size_t index, std::span<std::uint64_t> out) const {
    require(index >= 1 && index <= t, "draw_p_random: index out of range");
    draw_p_random_into(threshold_, domain.words(), seed.key(index), out);
}

VertexSet PRandomSchedule::draw(std::size_t index) const {
    VertexSet q(domain.universe());
    draw_into(index, q.words());
    return q;
}

std::size_t repetitions(std::size_t n, double delta, double rate) {
    require(n >= 1, "repetitions: n must be positive");
    require(delta > 0.0 && delta < 1.0, "repetitions: delta must lie in (0,1)");
    require(rate > 0.0 && rate <= 1.0, "repetitions: rate must lie in (0,1]");
    if (rate >= 1.0) return 1;
    const double numer = 2.0 * std::log(static_cast<double>(n)) + std::log(1.0 / delta);
    const double t = std::ceil(numer / rate);
    return t < 1.0 ? 1 : static_cast<std::size_t>(t);
}

} // namespace edq
