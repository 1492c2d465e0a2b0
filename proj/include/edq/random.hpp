#pragma once

// Counter-based randomness. Every random word is a pure function of
// (seed value, stream id, query index, word index), so any single query of a
// schedule can be regenerated without replaying the stream.

#include "edq/vertex_set.hpp"

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string_view>

namespace edq {

std::uint64_t mix64(std::uint64_t x);
std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b);

struct Seed {
    std::uint64_t value = 0;
    std::uint64_t stream = 0;

    /// Key of the word sequence for one query index.
    std::uint64_t key(std::uint64_t index) const;
    Seed with_stream(std::uint64_t s) const { return {value, s}; }
};

/// Word j of the sequence keyed by k.
inline std::uint64_t counter_word(std::uint64_t k, std::uint64_t j) {
    return mix64(k + (j + 1) * 0x9e3779b97f4a7c15ULL);
}

/// Stream ids derive from (algorithm id, round index, phase index).
std::uint64_t stream_id(std::string_view alg, std::uint32_t round, std::uint32_t phase);

/// Per-trial seeds from a master seed; adding trials never perturbs earlier ones.
std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial);

/// Fresh seed for the k-th restart of a Las Vegas wrapper.
std::uint64_t restart_seed(std::uint64_t seed, std::uint64_t restart);

/// Sequential generator over a keyed counter; satisfies UniformRandomBitGenerator.
class CounterRng {
public:
    using result_type = std::uint64_t;
    explicit CounterRng(Seed s, std::uint64_t index = 0) : key_(s.key(index)) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
    result_type operator()() { return counter_word(key_, pos_++); }

    /// Uniform in [0, bound) by rejection.
    std::uint64_t below(std::uint64_t bound);
    double uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t key_;
    std::uint64_t pos_ = 0;
};

/// floor(p * 2^53); p = 1 maps to 2^53.
std::uint64_t probability_threshold(double p);

/// Bit-sliced Bernoulli(p) sample of `domain`, written into out (overwrites).
/// A vertex is included iff its 53-bit lane value is below the threshold, so the
/// inclusion probability is exactly threshold / 2^53. Dyadic p = 2^-k costs k words
/// per 64 vertices.
void draw_p_random_into(std::uint64_t threshold, std::span<const std::uint64_t> domain,
                        std::uint64_t key, std::span<std::uint64_t> out);

/// Repeated p-random queries over a fixed domain.
struct PRandomSchedule {
    double p = 1.0;
    std::size_t t = 1;
    VertexSet domain;
    Seed seed;

    PRandomSchedule(double p, std::size_t t, VertexSet domain, Seed seed);

    /// Query number index, 1-based.
    VertexSet draw(std::size_t index) const;
    void draw_into(std::size_t index, std::span<std::uint64_t> out) const;

private:
    std::uint64_t threshold_;
};

inline VertexSet draw_p_random(const PRandomSchedule& s, std::size_t index) { return s.draw(index); }

/// ceil((2 ln n + ln(1/delta)) / rate); 1 when rate == 1.
std::size_t repetitions(std::size_t n, double delta, double rate);

} // namespace edq
