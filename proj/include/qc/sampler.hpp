#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "qc/graph.hpp"
#include "qc/kernel.hpp"
#include "qc/rng.hpp"
#include "qc/vertex_set.hpp"

namespace qc {

// Sub-stream tags hung off a master seed. Every consumer derives its own
// stream, so adding a consumer never shifts anyone else's draws.
namespace seed_tag {
inline constexpr std::uint64_t weights = 1;
inline constexpr std::uint64_t pairs = 2;
inline constexpr std::uint64_t heuristic = 3;
inline constexpr std::uint64_t replication = 4;
}  // namespace seed_tag

struct weighted_sample {
    graph g;
    std::vector<double> weights;
    std::uint64_t seed = 0;
    std::string kernel_id;
};

// The proof's three coupled graphs, built from one shared uniform per pair:
// an edge is present in g / g_upper / g_lower when that uniform is below
// kappa(W_i, W_j) / p_max / p_n respectively.
struct coupled_triple {
    graph g;        // ~ G(n, kappa)
    graph g_upper;  // ~ G(n, p_max)
    graph g_lower;  // ~ G(n, p_n)
    std::vector<double> weights;
    double p_max = 0;
    double p_n = 0;
    vertex_set core;  // vertices with weight within delta of c
};

std::vector<double> sample_weights(int n, rng::stream& ws);

// Samples G(n, kappa) given weights. The pair uniform is a pure function of
// (pair_seed, i, j), so the OpenMP version and the serial reference build
// bit-identical graphs.
graph sample_graph(const kernel& k, std::span<const double> weights, std::uint64_t pair_seed);
graph sample_graph_serial(const kernel& k, std::span<const double> weights,
                          std::uint64_t pair_seed);

weighted_sample sample(const kernel& k, int n, std::uint64_t master_seed);

coupled_triple sample_coupled(const kernel& k, int n, double delta, std::uint64_t master_seed);

// Vertices whose weight lies in [c - delta, c + delta] (clipped to [0,1]).
vertex_set dense_core(std::span<const double> weights, double c, double delta);

// The proof's delta_n = 1/log(n), clipped to at most 1/2.
double default_delta(int n);

// Sidecar JSON {seed, kernel_id, weights[]} accompanying a DIMACS dump.
void write_sample_sidecar(const weighted_sample& s, std::ostream& out);

}  // namespace qc
