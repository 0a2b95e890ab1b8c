#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "qc/vertex_set.hpp"

namespace qc {

// Immutable simple graph over vertices 0..n-1. Adjacency is stored as n
// bit-rows so induced edge counting is a popcount loop; rows are symmetric
// and the diagonal is always clear. Safe to share across threads.
class graph {
public:
    graph() = default;

    static graph from_edges(int n, std::span<const std::pair<int, int>> edges);

    // Takes ownership of n rows of `stride` words each. The rows must
    // already be symmetric with a clear diagonal (checked).
    static graph from_bit_rows(int n, std::vector<std::uint64_t> rows);

    int vertex_count() const { return n_; }
    std::int64_t edge_count() const { return m_; }
    int words_per_row() const { return stride_; }

    bool has_edge(int i, int j) const {
        return (bits_[static_cast<std::size_t>(i) * stride_ + (j >> 6)] >> (j & 63)) & 1u;
    }

    std::span<const std::uint64_t> row(int i) const {
        return {bits_.data() + static_cast<std::size_t>(i) * stride_,
                static_cast<std::size_t>(stride_)};
    }

    int degree(int i) const;

    bool operator==(const graph&) const = default;

private:
    int n_ = 0;
    int stride_ = 0;
    std::int64_t m_ = 0;
    std::vector<std::uint64_t> bits_;
};

// Number of edges of g with both endpoints in s.
std::int64_t edge_count_induced(const graph& g, const vertex_set& s);

// Subgraph induced by s, members relabeled 0..|s|-1 in ascending order.
graph induced_subgraph(const graph& g, const vertex_set& s);

// DIMACS ascii edge format: `c` comments, one `p edge <n> <m>` header,
// `e <i> <j>` lines with 1-based endpoints. Duplicate and reversed edge
// lines are accepted; self-loops are not.
graph read_dimacs(std::istream& in);
void write_dimacs(const graph& g, std::ostream& out);

}  // namespace qc
