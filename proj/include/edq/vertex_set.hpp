#pragma once

#include "edq/types.hpp"

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace edq {

inline constexpr std::size_t words_for(std::size_t n) { return (n + 63) / 64; }

/// Calls fn(index) for every set bit of a packed word span.
template <class Fn>
void for_each_bit(std::span<const std::uint64_t> words, Fn&& fn) {
    for (std::size_t w = 0; w < words.size(); ++w) {
        std::uint64_t x = words[w];
        while (x) {
            const int b = std::countr_zero(x);
            fn(static_cast<Vertex>(w * 64 + static_cast<std::size_t>(b)));
            x &= x - 1;
        }
    }
}

inline std::size_t popcount(std::span<const std::uint64_t> words) {
    std::size_t c = 0;
    for (auto w : words) c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

inline bool test_bit(std::span<const std::uint64_t> words, Vertex v) {
    return (words[v >> 6] >> (v & 63)) & 1u;
}

/// Subset of [0, n) stored as a packed bitset.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(std::size_t n) : n_(n), words_(words_for(n), 0) {}

    static VertexSet full(std::size_t n);
    static VertexSet of(std::size_t n, std::initializer_list<Vertex> members);
    static VertexSet of(std::size_t n, std::span<const Vertex> members);
    static VertexSet from_words(std::size_t n, std::span<const std::uint64_t> words);
    /// Parses the big-endian hex form written by to_hex().
    static VertexSet from_hex(std::size_t n, const std::string& hex);

    std::size_t universe() const { return n_; }
    bool contains(Vertex v) const { return v < n_ && test_bit(words_, v); }
    void insert(Vertex v);
    void erase(Vertex v);
    void clear();

    std::size_t count() const { return popcount(words_); }
    bool empty() const;

    std::span<const std::uint64_t> words() const { return words_; }
    std::span<std::uint64_t> words() { return words_; }

    VertexSet& operator|=(const VertexSet& o);
    VertexSet& operator&=(const VertexSet& o);
    VertexSet& operator-=(const VertexSet& o);
    friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
    friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
    friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }

    bool intersects(const VertexSet& o) const;
    bool subset_of(const VertexSet& o) const;

    std::vector<Vertex> members() const;

    template <class Fn>
    void for_each(Fn&& fn) const { for_each_bit(words_, std::forward<Fn>(fn)); }

    /// Bit (v) of the number is vertex v; ceil(n/4) lowercase digits, most significant first.
    std::string to_hex() const;

    friend bool operator==(const VertexSet&, const VertexSet&) = default;

private:
    void check_same(const VertexSet& o) const;

    std::size_t n_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Hex encoding shared by transcripts and matrix cache files.
std::string words_to_hex(std::span<const std::uint64_t> words, std::size_t n);
void hex_to_words(const std::string& hex, std::size_t n, std::span<std::uint64_t> out);

} // namespace edq
