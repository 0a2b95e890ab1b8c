#pragma once

#include <cstdint>

// Counter-based pseudo-random streams built on the splitmix64 finalizer.
// Every draw is a pure function of (key, counter), so pair uniforms can be
// evaluated in any order by any number of threads and still come out
// bit-identical. std::uniform_real_distribution is avoided on purpose: its
// output is not pinned down by the standard.

namespace qc::rng {

inline constexpr std::uint64_t golden_gamma = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

// Derives an independent child seed from (seed, tag). Used for the
// weights/pairs/heuristic sub-streams and for per-replication seeds.
constexpr std::uint64_t derive(std::uint64_t seed, std::uint64_t tag) {
    return mix64(seed ^ mix64(tag + golden_gamma));
}

// 53-bit mantissa in [0, 1).
constexpr double to_unit(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Sequential stream (splitmix64 proper).
class stream {
public:
    explicit stream(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += golden_gamma;
        return mix64(state_);
    }

    double next_unit() { return to_unit(next()); }

    // Uniform integer in [0, bound) by rejection-free scaling; bound > 0.
    std::uint64_t next_below(std::uint64_t bound) {
        return static_cast<std::uint64_t>(next_unit() * static_cast<double>(bound));
    }

private:
    std::uint64_t state_;
};

// Keyed counter stream: at(i) is independent of all other counters.
class counter_stream {
public:
    explicit counter_stream(std::uint64_t key) : key_(key) {}

    std::uint64_t at(std::uint64_t counter) const {
        return mix64(key_ + golden_gamma * (counter + 1));
    }

    double unit_at(std::uint64_t counter) const { return to_unit(at(counter)); }

private:
    std::uint64_t key_;
};

// Triangular index of an unordered pair i < j; does not depend on the
// universe size, so the same (seed, i, j) always maps to the same uniform.
constexpr std::uint64_t pair_index(std::uint64_t i, std::uint64_t j) {
    return j * (j - 1) / 2 + i;
}

}  // namespace qc::rng
