#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qc {

// Input that does not follow a file format. Carries the 1-based line
// number when one is known.
class parse_error : public std::runtime_error {
public:
    parse_error(std::string msg, long line = -1)
        : std::runtime_error(line >= 0 ? "line " + std::to_string(line) + ": " + std::move(msg)
                                       : std::move(msg)),
          line_(line) {}

    long line() const { return line_; }

private:
    long line_;
};

// The concentration theory only applies for p_max < gamma <= 1 and a kernel
// whose maximum sits on the diagonal. Everything outside that is refused
// rather than reported on.
class hypothesis_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A probability-1 claim (coupling containment, omega ordering) failed on a
// concrete sample. The seed reproduces the counterexample.
class audit_error : public std::runtime_error {
public:
    audit_error(std::string msg, std::uint64_t seed)
        : std::runtime_error(std::move(msg) + " (seed " + std::to_string(seed) + ")"),
          seed_(seed) {}

    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
};

}  // namespace qc
