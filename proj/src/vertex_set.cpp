#include "edq/vertex_set.hpp"

#include <algorithm>

namespace edq {

namespace {

std::uint64_t tail_mask(std::size_t n) {
    const std::size_t r = n & 63;
    return r == 0 ? ~std::uint64_t{0} : ((std::uint64_t{1} << r) - 1);
}

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

} // namespace

VertexSet VertexSet::full(std::size_t n) {
    VertexSet s(n);
    std::fill(s.words_.begin(), s.words_.end(), ~std::uint64_t{0});
    if (!s.words_.empty()) s.words_.back() &= tail_mask(n);
    return s;
}

VertexSet VertexSet::of(std::size_t n, std::initializer_list<Vertex> members) {
    return of(n, std::span<const Vertex>(members.begin(), members.size()));
}

VertexSet VertexSet::of(std::size_t n, std::span<const Vertex> members) {
    VertexSet s(n);
    for (Vertex v : members) s.insert(v);
    return s;
}

VertexSet VertexSet::from_words(std::size_t n, std::span<const std::uint64_t> words) {
    require(words.size() == words_for(n), "VertexSet::from_words: word count mismatch");
    VertexSet s(n);
    std::copy(words.begin(), words.end(), s.words_.begin());
    if (!s.words_.empty()) s.words_.back() &= tail_mask(n);
    return s;
}

VertexSet VertexSet::from_hex(std::size_t n, const std::string& hex) {
    VertexSet s(n);
    hex_to_words(hex, n, s.words_);
    return s;
}

void VertexSet::insert(Vertex v) {
    require(v < n_, "VertexSet::insert: vertex out of range");
    words_[v >> 6] |= std::uint64_t{1} << (v & 63);
}

void VertexSet::erase(Vertex v) {
    require(v < n_, "VertexSet::erase: vertex out of range");
    words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
}

void VertexSet::clear() { std::fill(words_.begin(), words_.end(), 0); }

bool VertexSet::empty() const {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

void VertexSet::check_same(const VertexSet& o) const {
    require(n_ == o.n_, "VertexSet: universe size mismatch");
}

VertexSet& VertexSet::operator|=(const VertexSet& o) {
    check_same(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
}

VertexSet& VertexSet::operator&=(const VertexSet& o) {
    check_same(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
}

VertexSet& VertexSet::operator-=(const VertexSet& o) {
    check_same(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
}

bool VertexSet::intersects(const VertexSet& o) const {
    check_same(o);
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & o.words_[i]) return true;
    return false;
}

bool VertexSet::subset_of(const VertexSet& o) const {
    check_same(o);
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & ~o.words_[i]) return false;
    return true;
}

std::vector<Vertex> VertexSet::members() const {
    std::vector<Vertex> out;
    out.reserve(count());
    for_each([&](Vertex v) { out.push_back(v); });
    return out;
}

std::string VertexSet::to_hex() const { return words_to_hex(words_, n_); }

std::string words_to_hex(std::span<const std::uint64_t> words, std::size_t n) {
    static constexpr char digits[] = "0123456789abcdef";
    const std::size_t nd = std::max<std::size_t>(1, (n + 3) / 4);
    std::string out(nd, '0');
    for (std::size_t d = 0; d < nd; ++d) {
        const std::size_t bit = d * 4;
        std::uint64_t nib = 0;
        if (bit < words.size() * 64) nib = (words[bit >> 6] >> (bit & 63)) & 0xF;
        out[nd - 1 - d] = digits[nib];
    }
    return out;
}

void hex_to_words(const std::string& hex, std::size_t n, std::span<std::uint64_t> out) {
    require(out.size() == words_for(n), "hex_to_words: output size mismatch");
    std::fill(out.begin(), out.end(), 0);
    const std::size_t nd = hex.size();
    for (std::size_t d = 0; d < nd; ++d) {
        const int val = hex_value(hex[nd - 1 - d]);
        require(val >= 0, "hex_to_words: invalid hex digit");
        for (int b = 0; b < 4; ++b) {
            if (!((val >> b) & 1)) continue;
            const std::size_t bit = d * 4 + static_cast<std::size_t>(b);
            require(bit < n, "hex_to_words: bit beyond universe");
            out[bit >> 6] |= std::uint64_t{1} << (bit & 63);
        }
    }
}

} // namespace edq
