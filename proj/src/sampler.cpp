#include "qc/sampler.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace qc {

std::vector<double> sample_weights(int n, rng::stream& ws) {
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i) w[i] = ws.next_unit();
    return w;
}

namespace {

// Upper triangle row-parallel, then mirror. Thread count cannot change the
// result: each pair's uniform is keyed by its own index.
graph build_graph(const kernel& k, std::span<const double> w, std::uint64_t pair_seed,
                  bool parallel) {
    const int n = static_cast<int>(w.size());
    const int stride = (n + 63) / 64;
    std::vector<std::uint64_t> bits(static_cast<std::size_t>(n) * stride, 0);
    const rng::counter_stream pairs(pair_seed);

#pragma omp parallel for schedule(dynamic, 8) if (parallel)
    for (int i = 0; i < n; ++i) {
        std::uint64_t* row = bits.data() + static_cast<std::size_t>(i) * stride;
        for (int j = i + 1; j < n; ++j) {
            const double u = pairs.unit_at(rng::pair_index(i, j));
            if (u <= k.eval(w[i], w[j]))
                row[j >> 6] |= std::uint64_t{1} << (j & 63);
        }
    }
#pragma omp parallel for schedule(static) if (parallel)
    for (int j = 0; j < n; ++j) {
        std::uint64_t* row = bits.data() + static_cast<std::size_t>(j) * stride;
        for (int i = 0; i < j; ++i) {
            if ((bits[static_cast<std::size_t>(i) * stride + (j >> 6)] >> (j & 63)) & 1u)
                row[i >> 6] |= std::uint64_t{1} << (i & 63);
        }
    }
    return graph::from_bit_rows(n, std::move(bits));
}

}  // namespace

graph sample_graph(const kernel& k, std::span<const double> weights, std::uint64_t pair_seed) {
    return build_graph(k, weights, pair_seed, true);
}

graph sample_graph_serial(const kernel& k, std::span<const double> weights,
                          std::uint64_t pair_seed) {
    return build_graph(k, weights, pair_seed, false);
}

weighted_sample sample(const kernel& k, int n, std::uint64_t master_seed) {
    rng::stream ws(rng::derive(master_seed, seed_tag::weights));
    weighted_sample s;
    s.weights = sample_weights(n, ws);
    s.g = sample_graph(k, s.weights, rng::derive(master_seed, seed_tag::pairs));
    s.seed = master_seed;
    s.kernel_id = k.id();
    return s;
}

coupled_triple sample_coupled(const kernel& k, int n, double delta, std::uint64_t master_seed) {
    if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
    const max_point mp = k.max_on_diagonal();

    rng::stream ws(rng::derive(master_seed, seed_tag::weights));
    coupled_triple t;
    t.weights = sample_weights(n, ws);
    t.p_max = mp.p_max;
    t.p_n = k.inf_on_square(mp.c, delta);
    t.core = dense_core(t.weights, mp.c, delta);

    const int stride = (n + 63) / 64;
    std::vector<std::uint64_t> bits_g(static_cast<std::size_t>(n) * stride, 0);
    std::vector<std::uint64_t> bits_up(bits_g);
    std::vector<std::uint64_t> bits_lo(bits_g);
    const rng::counter_stream pairs(rng::derive(master_seed, seed_tag::pairs));

#pragma omp parallel for schedule(dynamic, 8)
    for (int i = 0; i < n; ++i) {
        const std::size_t base = static_cast<std::size_t>(i) * stride;
        for (int j = i + 1; j < n; ++j) {
            const double u = pairs.unit_at(rng::pair_index(i, j));
            const std::uint64_t bit = std::uint64_t{1} << (j & 63);
            if (u <= k.eval(t.weights[i], t.weights[j])) bits_g[base + (j >> 6)] |= bit;
            if (u <= t.p_max) bits_up[base + (j >> 6)] |= bit;
            if (u <= t.p_n) bits_lo[base + (j >> 6)] |= bit;
        }
    }
    auto mirror = [&](std::vector<std::uint64_t>& bits) {
#pragma omp parallel for schedule(static)
        for (int j = 0; j < n; ++j) {
            std::uint64_t* row = bits.data() + static_cast<std::size_t>(j) * stride;
            for (int i = 0; i < j; ++i) {
                if ((bits[static_cast<std::size_t>(i) * stride + (j >> 6)] >> (j & 63)) & 1u)
                    row[i >> 6] |= std::uint64_t{1} << (i & 63);
            }
        }
    };
    mirror(bits_g);
    mirror(bits_up);
    mirror(bits_lo);
    t.g = graph::from_bit_rows(n, std::move(bits_g));
    t.g_upper = graph::from_bit_rows(n, std::move(bits_up));
    t.g_lower = graph::from_bit_rows(n, std::move(bits_lo));
    return t;
}

vertex_set dense_core(std::span<const double> weights, double c, double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
    const double lo = std::max(0.0, c - delta);
    const double hi = std::min(1.0, c + delta);
    vertex_set s(static_cast<int>(weights.size()));
    for (int i = 0; i < static_cast<int>(weights.size()); ++i) {
        if (weights[i] >= lo && weights[i] <= hi) s.add(i);
    }
    return s;
}

double default_delta(int n) {
    if (n <= 1) throw std::invalid_argument("default_delta needs n >= 2");
    return std::min(0.5, 1.0 / std::log(static_cast<double>(n)));
}

void write_sample_sidecar(const weighted_sample& s, std::ostream& out) {
    nlohmann::json j{{"seed", s.seed}, {"kernel_id", s.kernel_id}, {"weights", s.weights}};
    out << j.dump(2) << "\n";
}

}  // namespace qc
