#pragma once

#include <cassert>
#include <cstdint>
#include <cstddef>
#include <functional>
#include <vector>

namespace arcade {

// Dense fixed-size bitset. Value type; all binary ops require equal sizes.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }

    bool test(std::size_t i) const {
        assert(i < n_);
        return (w_[i >> 6] >> (i & 63)) & 1u;
    }
    void set(std::size_t i) {
        assert(i < n_);
        w_[i >> 6] |= std::uint64_t(1) << (i & 63);
    }
    void reset(std::size_t i) {
        assert(i < n_);
        w_[i >> 6] &= ~(std::uint64_t(1) << (i & 63));
    }

    bool any() const {
        for (auto w : w_)
            if (w) return true;
        return false;
    }
    bool none() const { return !any(); }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : w_) c += static_cast<std::size_t>(__builtin_popcountll(w));
        return c;
    }

    Bitset& operator|=(const Bitset& o) {
        assert(n_ == o.n_);
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }
    Bitset& operator&=(const Bitset& o) {
        assert(n_ == o.n_);
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }
    Bitset& subtract(const Bitset& o) {
        assert(n_ == o.n_);
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
        return *this;
    }

    friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
    friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }

    Bitset complement() const {
        Bitset r(*this);
        for (auto& w : r.w_) w = ~w;
        r.trim();
        return r;
    }

    bool intersects(const Bitset& o) const {
        assert(n_ == o.n_);
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i]) return true;
        return false;
    }
    bool is_subset_of(const Bitset& o) const {
        assert(n_ == o.n_);
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~o.w_[i]) return false;
        return true;
    }

    bool operator==(const Bitset& o) const = default;

    // Lexicographic by bit index; lets sets act as map keys.
    bool operator<(const Bitset& o) const {
        assert(n_ == o.n_);
        return w_ < o.w_;
    }

    int first() const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i]) return static_cast<int>(i * 64 + __builtin_ctzll(w_[i]));
        return -1;
    }

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t i = 0; i < w_.size(); ++i) {
            std::uint64_t w = w_[i];
            while (w) {
                f(static_cast<int>(i * 64 + __builtin_ctzll(w)));
                w &= w - 1;
            }
        }
    }

    std::vector<int> to_vector() const {
        std::vector<int> v;
        v.reserve(count());
        for_each([&](int i) { v.push_back(i); });
        return v;
    }

    std::size_t hash() const {
        std::size_t h = n_;
        for (auto w : w_) h = h * 1099511628211ull + static_cast<std::size_t>(w);
        return h;
    }

private:
    void trim() {
        if (n_ % 64 && !w_.empty())
            w_.back() &= (std::uint64_t(1) << (n_ % 64)) - 1;
    }

    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

struct BitsetHash {
    std::size_t operator()(const Bitset& b) const { return b.hash(); }
};

// Element of the complex algebra over a fixed atom structure: a set of atoms.
using CmElement = Bitset;

} // namespace arcade
