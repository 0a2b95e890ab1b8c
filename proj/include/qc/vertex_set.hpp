#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <span>
#include <vector>

namespace qc {

// Subset of [n] stored as 64-bit words, word 0 holding vertices 0..63.
class vertex_set {
public:
    vertex_set() = default;

    explicit vertex_set(int n) : n_(n), words_((n + 63) / 64, 0) { assert(n >= 0); }

    static vertex_set all(int n) {
        vertex_set s(n);
        for (int v = 0; v < n; ++v) s.add(v);
        return s;
    }

    int universe() const { return n_; }

    bool test(int v) const {
        assert(v >= 0 && v < n_);
        return (words_[v >> 6] >> (v & 63)) & 1u;
    }

    void add(int v) {
        assert(v >= 0 && v < n_);
        words_[v >> 6] |= std::uint64_t{1} << (v & 63);
    }

    void remove(int v) {
        assert(v >= 0 && v < n_);
        words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
    }

    int count() const {
        int c = 0;
        for (auto w : words_) c += std::popcount(w);
        return c;
    }

    bool empty() const {
        for (auto w : words_) {
            if (w) return false;
        }
        return true;
    }

    bool is_subset_of(const vertex_set& other) const {
        assert(n_ == other.n_);
        for (std::size_t k = 0; k < words_.size(); ++k) {
            if (words_[k] & ~other.words_[k]) return false;
        }
        return true;
    }

    vertex_set& operator&=(const vertex_set& other) {
        assert(n_ == other.n_);
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= other.words_[k];
        return *this;
    }

    vertex_set& operator|=(const vertex_set& other) {
        assert(n_ == other.n_);
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= other.words_[k];
        return *this;
    }

    friend vertex_set operator&(vertex_set a, const vertex_set& b) { return a &= b; }
    friend vertex_set operator|(vertex_set a, const vertex_set& b) { return a |= b; }

    // Drops every member <= v.
    void keep_above(int v) {
        assert(v >= -1 && v < n_);
        if (v < 0) return;
        const int k = v >> 6;
        for (int w = 0; w < k; ++w) words_[w] = 0;
        words_[k] &= ~((std::uint64_t{2} << (v & 63)) - 1);
    }

    // First member >= from, or -1.
    int next_member(int from) const {
        if (from < 0) from = 0;
        for (int k = from >> 6; k < static_cast<int>(words_.size()); ++k) {
            std::uint64_t w = words_[k];
            if (k == (from >> 6)) w &= ~std::uint64_t{0} << (from & 63);
            if (w) return k * 64 + std::countr_zero(w);
        }
        return -1;
    }

    template <typename F>
    void for_each(F&& f) const {
        for (std::size_t k = 0; k < words_.size(); ++k) {
            std::uint64_t w = words_[k];
            while (w) {
                f(static_cast<int>(k * 64 + std::countr_zero(w)));
                w &= w - 1;
            }
        }
    }

    std::vector<int> members() const {
        std::vector<int> out;
        out.reserve(count());
        for_each([&](int v) { out.push_back(v); });
        return out;
    }

    std::span<const std::uint64_t> words() const { return words_; }

    bool operator==(const vertex_set&) const = default;

    // Compares the sets as integer bitmasks (vertex 0 = least significant
    // bit); the solver's tie-break order.
    static bool mask_less(const vertex_set& a, const vertex_set& b) {
        assert(a.n_ == b.n_);
        for (std::size_t k = a.words_.size(); k-- > 0;) {
            if (a.words_[k] != b.words_[k]) return a.words_[k] < b.words_[k];
        }
        return false;
    }

private:
    int n_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace qc
