#include "qc/graph.hpp"

#include <bit>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "qc/errors.hpp"

namespace qc {

namespace {

std::int64_t count_all_bits(const std::vector<std::uint64_t>& bits) {
    std::int64_t total = 0;
    for (auto w : bits) total += std::popcount(w);
    return total;
}

}  // namespace

graph graph::from_edges(int n, std::span<const std::pair<int, int>> edges) {
    const int stride = (n + 63) / 64;
    std::vector<std::uint64_t> bits(static_cast<std::size_t>(n) * stride, 0);
    for (auto [i, j] : edges) {
        if (i < 0 || i >= n || j < 0 || j >= n || i == j)
            throw parse_error("edge endpoint out of range or self-loop");
        bits[static_cast<std::size_t>(i) * stride + (j >> 6)] |= std::uint64_t{1} << (j & 63);
        bits[static_cast<std::size_t>(j) * stride + (i >> 6)] |= std::uint64_t{1} << (i & 63);
    }
    graph g;
    g.n_ = n;
    g.stride_ = stride;
    g.bits_ = std::move(bits);
    g.m_ = count_all_bits(g.bits_) / 2;
    return g;
}

graph graph::from_bit_rows(int n, std::vector<std::uint64_t> rows) {
    const int stride = (n + 63) / 64;
    if (rows.size() != static_cast<std::size_t>(n) * stride)
        throw parse_error("bit rows have the wrong size");
    graph g;
    g.n_ = n;
    g.stride_ = stride;
    g.bits_ = std::move(rows);
    for (int i = 0; i < n; ++i) {
        if (g.has_edge(i, i)) throw parse_error("adjacency has a set diagonal bit");
        for (int j = i + 1; j < n; ++j) {
            if (g.has_edge(i, j) != g.has_edge(j, i))
                throw parse_error("adjacency is not symmetric");
        }
    }
    g.m_ = count_all_bits(g.bits_) / 2;
    return g;
}

int graph::degree(int i) const {
    int d = 0;
    for (auto w : row(i)) d += std::popcount(w);
    return d;
}

std::int64_t edge_count_induced(const graph& g, const vertex_set& s) {
    std::int64_t twice = 0;
    const auto sw = s.words();
    s.for_each([&](int v) {
        const auto rw = g.row(v);
        for (std::size_t k = 0; k < rw.size(); ++k) twice += std::popcount(rw[k] & sw[k]);
    });
    return twice / 2;
}

graph induced_subgraph(const graph& g, const vertex_set& s) {
    const std::vector<int> keep = s.members();
    std::vector<std::pair<int, int>> edges;
    for (std::size_t a = 0; a < keep.size(); ++a) {
        for (std::size_t b = a + 1; b < keep.size(); ++b) {
            if (g.has_edge(keep[a], keep[b]))
                edges.emplace_back(static_cast<int>(a), static_cast<int>(b));
        }
    }
    return graph::from_edges(static_cast<int>(keep.size()), edges);
}

graph read_dimacs(std::istream& in) {
    std::string line;
    long lineno = 0;
    int n = -1;
    std::vector<std::pair<int, int>> edges;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == 'c') continue;
        std::istringstream ls(line);
        char kind = 0;
        ls >> kind;
        if (kind == 'p') {
            std::string fmt;
            long long pn = -1, pm = -1;
            if (!(ls >> fmt >> pn >> pm) || fmt != "edge" || pn < 0)
                throw parse_error("malformed problem line, expected `p edge <n> <m>`", lineno);
            if (n >= 0) throw parse_error("duplicate problem line", lineno);
            n = static_cast<int>(pn);
        } else if (kind == 'e') {
            if (n < 0) throw parse_error("edge line before problem line", lineno);
            long long i = 0, j = 0;
            if (!(ls >> i >> j)) throw parse_error("malformed edge line", lineno);
            if (i < 1 || i > n || j < 1 || j > n)
                throw parse_error("edge endpoint out of range", lineno);
            if (i == j) throw parse_error("self-loop is not allowed", lineno);
            edges.emplace_back(static_cast<int>(i - 1), static_cast<int>(j - 1));
        } else {
            throw parse_error("unknown line kind `" + std::string(1, kind) + "`", lineno);
        }
    }
    if (n < 0) throw parse_error("missing `p edge` header");
    return graph::from_edges(n, edges);
}

void write_dimacs(const graph& g, std::ostream& out) {
    out << "p edge " << g.vertex_count() << " " << g.edge_count() << "\n";
    for (int i = 0; i < g.vertex_count(); ++i) {
        for (int j = i + 1; j < g.vertex_count(); ++j) {
            if (g.has_edge(i, j)) out << "e " << i + 1 << " " << j + 1 << "\n";
        }
    }
}

}  // namespace qc
