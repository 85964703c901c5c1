#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace frl {

// Fixed-length packed bit vector. Bits past size() in the last word are always zero.
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t n, bool value = false)
        : n_(n), words_((n + 63) / 64, value ? ~std::uint64_t{0} : 0) {
        trim();
    }

    std::size_t size() const { return n_; }
    std::size_t num_words() const { return words_.size(); }
    const std::vector<std::uint64_t>& words() const { return words_; }
    const std::uint64_t* data() const { return words_.data(); }

    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i, bool v = true) {
        const std::uint64_t m = std::uint64_t{1} << (i & 63);
        if (v) words_[i >> 6] |= m; else words_[i >> 6] &= ~m;
    }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }
    bool any() const {
        for (auto w : words_) if (w) return true;
        return false;
    }

    BitVector& operator&=(const BitVector& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }
    BitVector& operator|=(const BitVector& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    // this &= ~o
    BitVector& clear_bits(const BitVector& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
        return *this;
    }
    BitVector operator~() const {
        BitVector r(*this);
        for (auto& w : r.words_) w = ~w;
        r.trim();
        return r;
    }
    friend BitVector operator&(BitVector a, const BitVector& b) { return a &= b; }
    friend BitVector operator|(BitVector a, const BitVector& b) { return a |= b; }
    friend bool operator==(const BitVector&, const BitVector&) = default;

private:
    void trim() {
        if (n_ % 64 != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
    }

    std::size_t n_ = 0;
    std::vector<std::uint64_t> words_;
};

// popcount(a & b)
inline std::size_t and_count(const BitVector& a, const BitVector& b) {
    std::size_t c = 0;
    const auto* x = a.data();
    const auto* y = b.data();
    for (std::size_t i = 0, k = a.num_words(); i < k; ++i) c += std::popcount(x[i] & y[i]);
    return c;
}

// popcount(a & b & c)
inline std::size_t and_count(const BitVector& a, const BitVector& b, const BitVector& c) {
    std::size_t r = 0;
    const auto* x = a.data();
    const auto* y = b.data();
    const auto* z = c.data();
    for (std::size_t i = 0, k = a.num_words(); i < k; ++i) r += std::popcount(x[i] & y[i] & z[i]);
    return r;
}

} // namespace frl
