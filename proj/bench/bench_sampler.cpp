// Compares the OpenMP sampler against the serial reference: same bits, and a
// wall-clock ratio. Run with OMP_NUM_THREADS to vary the parallel side.

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "qc/kernel.hpp"
#include "qc/rng.hpp"
#include "qc/sampler.hpp"

using clock_type = std::chrono::steady_clock;

static double secs_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

int main(int argc, char** argv) {
    const int n = argc > 1 ? std::atoi(argv[1]) : 3000;
    const int rounds = argc > 2 ? std::atoi(argv[2]) : 3;
    const qc::kernel k{qc::constant_kernel{0.3}};

    qc::rng::stream ws(qc::rng::derive(7, qc::seed_tag::weights));
    const std::vector<double> weights = qc::sample_weights(n, ws);
    const std::uint64_t pair_seed = qc::rng::derive(7, qc::seed_tag::pairs);

    // warm-up + equality check
    const qc::graph parallel = qc::sample_graph(k, weights, pair_seed);
    const qc::graph serial = qc::sample_graph_serial(k, weights, pair_seed);
    if (!(parallel == serial)) {
        std::fprintf(stderr, "FAIL: parallel and serial samplers disagree\n");
        return 1;
    }

    double t_par = 0.0;
    double t_ser = 0.0;
    for (int r = 0; r < rounds; ++r) {
        auto t0 = clock_type::now();
        const qc::graph gp = qc::sample_graph(k, weights, pair_seed);
        t_par += secs_since(t0);
        t0 = clock_type::now();
        const qc::graph gs = qc::sample_graph_serial(k, weights, pair_seed);
        t_ser += secs_since(t0);
        if (!(gp == gs)) {
            std::fprintf(stderr, "FAIL: samplers disagree in round %d\n", r);
            return 1;
        }
    }
    std::printf("n=%d rounds=%d edges=%lld\n", n, rounds, static_cast<long long>(parallel.edge_count()));
    std::printf("parallel: %.3f s  serial: %.3f s  speedup: %.2fx\n", t_par, t_ser,
                t_ser / t_par);
    return 0;
}
