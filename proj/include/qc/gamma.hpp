#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "qc/errors.hpp"

namespace qc {

// Edge-density parameter gamma = num/den kept as an exact reduced fraction,
// so density tests at exact thresholds (C5 with gamma = 1/2 needs exactly 5
// edges) never depend on floating point.
struct gamma_ratio {
    std::int64_t num = 1;
    std::int64_t den = 1;

    gamma_ratio() = default;

    gamma_ratio(std::int64_t n, std::int64_t d) : num(n), den(d) {
        if (d <= 0 || n < 0 || n > d) throw parse_error("gamma must satisfy 0 <= num/den <= 1");
        const std::int64_t g = std::gcd(num, den);
        num /= g;
        den /= g;
    }

    // Accepts "3/4", "1", "0" and decimal forms like "0.7" (read exactly as
    // 7/10, not through a double).
    static gamma_ratio parse(const std::string& text);

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    bool is_zero() const { return num == 0; }
    bool is_one() const { return num == den; }

    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }

    friend bool operator==(const gamma_ratio& a, const gamma_ratio& b) {
        return a.num == b.num && a.den == b.den;
    }
    // Fraction order, exact.
    friend bool operator<(const gamma_ratio& a, const gamma_ratio& b) {
        return a.num * b.den < b.num * a.den;
    }
    friend bool operator<=(const gamma_ratio& a, const gamma_ratio& b) {
        return a.num * b.den <= b.num * a.den;
    }
};

// Minimum integer edge count that makes an r-vertex set gamma-dense:
// ceil(num * r * (r-1) / (2 * den)).
inline std::int64_t required_edges(std::int64_t r, const gamma_ratio& gamma) {
    if (r <= 1) return 0;
    const std::int64_t numer = gamma.num * r * (r - 1);
    const std::int64_t denom = 2 * gamma.den;
    return (numer + denom - 1) / denom;
}

// The density certificate 2*den*edges >= num*size*(size-1), in integers.
inline bool is_gamma_dense(std::int64_t size, std::int64_t edges, const gamma_ratio& gamma) {
    return 2 * gamma.den * edges >= gamma.num * size * (size - 1);
}

}  // namespace qc
