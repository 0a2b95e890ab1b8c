// Full-scale acceptance checks for the library. Each criterion prints one
// line, [PASS] or [FAIL], with the measured numbers in parentheses; the exit
// status is the number of failed criteria. Run a single criterion with
// `acceptance --only N`. These are deliberately heavier than the unit tests:
// they re-derive every headline property at the scale the project targets.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qc/gamma.hpp"
#include "qc/graph.hpp"
#include "qc/harness.hpp"
#include "qc/kernel.hpp"
#include "qc/rng.hpp"
#include "qc/sampler.hpp"
#include "qc/solver.hpp"
#include "qc/theory.hpp"

using namespace qc;

namespace {

struct outcome {
    bool pass = false;
    std::string detail;
};

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

std::string fmt1(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.1f", v);
    return buf;
}

std::string fmt2(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

kernel block_kernel_under_test() {
    return kernel{block_kernel{{0.0, 0.5, 1.0}, {{0.5, 0.2}, {0.2, 0.4}}}};
}

// --- criterion 1: the branch-and-bound solver against exhaustive enumeration

outcome criterion_1() {
    const auto t0 = clock_type::now();
    const gamma_ratio gammas[] = {{1, 2}, {3, 5}, {3, 4}, {9, 10}, {1, 1}};
    const double probs[] = {0.2, 0.5, 0.8};

    rng::stream rs(0xACC1);
    int graphs = 0, instances = 0, mismatches = 0;
    for (int n = 8; n <= 14; ++n)
        for (double p : probs)
            for (int rep = 0; rep < 10; ++rep) {
                const graph g = oracles::random_graph(n, p, rs);
                ++graphs;
                for (const auto& gamma : gammas) {
                    const auto want = brute_force(g, gamma);
                    const auto got = exact_bb(g, gamma, default_node_budget);
                    ++instances;
                    const bool ok =
                        got.exact && got.size == want.size &&
                        oracles::certificate_ok(g, got.witness.members(), gamma,
                                                got.witness_edges) &&
                        oracles::certificate_ok(g, want.witness.members(), gamma,
                                                want.witness_edges);
                    if (!ok) ++mismatches;
                }
            }

    const double secs = seconds_since(t0);
    std::ostringstream d;
    d << graphs << " graphs, " << instances << " instances, " << mismatches
      << " mismatches, " << fmt1(secs) << "s";
    return {mismatches == 0 && secs < 120.0, d.str()};
}

// --- criterion 2: gamma = 1 against an independent max-clique solver

outcome criterion_2() {
    const auto t0 = clock_type::now();
    const int sizes[] = {10, 15, 20, 25, 30, 35, 40};
    const double probs[] = {0.3, 0.5, 0.7};

    rng::stream rs(0xACC2);
    int checked = 0, mismatches = 0;
    while (checked < 200) {
        const int n = sizes[checked % 7];
        const double p = probs[(checked / 7) % 3];
        const graph g = oracles::random_graph(n, p, rs);
        const auto got = qc_number(g, gamma_ratio(1, 1), default_node_budget);
        const int want = oracles::max_clique(g);
        if (!got.exact || got.size != want ||
            got.witness_edges != std::int64_t(got.size) * (got.size - 1) / 2)
            ++mismatches;
        ++checked;
    }

    std::ostringstream d;
    d << checked << " graphs up to n=40, " << mismatches << " mismatches, "
      << fmt1(seconds_since(t0)) << "s";
    return {mismatches == 0, d.str()};
}

// --- criterion 3: sample-by-sample coupling claims

outcome criterion_3() {
    const auto t0 = clock_type::now();
    std::string note;
    bool ok = true;

    // 1000 containment-only audits at n = 100
    try {
        experiment_config cfg;
        cfg.k = block_kernel_under_test();
        cfg.n = 100;
        cfg.gamma = gamma_ratio(3, 4);
        cfg.replications = 1000;
        cfg.master_seed = 0xC0u;
        cfg.mode = run_mode::coupling_audit;
        const auto rep = run_coupling_audit(cfg);
        note += "1000 containment audits at n=100 (violations=" +
                std::to_string(rep.violations) + ")";
        ok = ok && rep.violations == 0 && !rep.exact_audit;
    } catch (const audit_error& e) {
        ok = false;
        note += std::string("containment audit threw: ") + e.what();
    }

    // 100 exact omega-chain audits at n = 40
    try {
        experiment_config cfg;
        cfg.k = block_kernel_under_test();
        cfg.n = 40;
        cfg.gamma = gamma_ratio(3, 4);
        cfg.replications = 100;
        cfg.master_seed = 0xC1u;
        cfg.budget = 2'000'000'000ull;
        cfg.mode = run_mode::coupling_audit;
        const auto rep = run_coupling_audit(cfg);
        int exact_rows = 0;
        for (const auto& row : rep.rows) exact_rows += row.exact ? 1 : 0;
        note += ", 100 exact chain audits at n=40 (exact=" + std::to_string(exact_rows) +
                ", violations=" + std::to_string(rep.violations) + ")";
        ok = ok && rep.exact_audit && exact_rows == 100 && rep.violations == 0;
    } catch (const audit_error& e) {
        ok = false;
        note += std::string(", chain audit threw: ") + e.what();
    }

    const double secs = seconds_since(t0);
    note += ", " + fmt1(secs) + "s";
    return {ok && secs < 300.0, note};
}

// --- criterion 4: concentration at n = 60 under the constant 0.2 kernel

outcome criterion_4() {
    const auto t0 = clock_type::now();

    experiment_config cfg;
    cfg.k = kernel{constant_kernel{0.2}};
    cfg.n = 60;
    cfg.gamma = gamma_ratio(7, 10);
    cfg.epsilon = 0.5;
    cfg.replications = 50;
    cfg.master_seed = 42;
    cfg.budget = 2'000'000'000ull;
    const auto rep = run_concentration(cfg);

    // the point estimate itself, against an independently derived constant
    const double refined = rep.theory->refined;
    const bool refined_ok = std::abs(refined - 9.4144312465146556) < 1e-9;

    int exact_rows = 0, in_refined = 0, in_window = 0;
    int lo_omega = cfg.n, hi_omega = 0;
    const auto [wlo, whi] = window(*rep.theory, cfg.epsilon);
    for (const auto& row : rep.rows) {
        if (!row.exact) continue;
        ++exact_rows;
        lo_omega = std::min(lo_omega, row.omega);
        hi_omega = std::max(hi_omega, row.omega);
        if (row.omega >= refined - 3.0 && row.omega <= refined + 2.0) ++in_refined;
        if (row.omega >= wlo && row.omega <= whi) ++in_window;
    }
    const double frac_refined =
        exact_rows ? double(in_refined) / exact_rows : 0.0;
    const double frac_window = exact_rows ? double(in_window) / exact_rows : 0.0;
    const double secs = seconds_since(t0);

    const bool pass = refined_ok && exact_rows == 50 && frac_refined >= 0.90 &&
                      frac_window == 1.0 && secs < 600.0;

    std::ostringstream d;
    d << "refined=" << fmt2(refined) << ", omega in [" << lo_omega << "," << hi_omega
      << "], frac_refined=" << fmt2(frac_refined) << " (need >=0.90), frac_window="
      << fmt2(frac_window) << " (need 1.00 in [" << fmt2(wlo) << "," << fmt2(whi)
      << "]), exact=" << exact_rows << "/50, " << fmt1(secs) << "s";
    return {pass, d.str()};
}

// --- criterion 5: concentration under the block kernel with core bracketing

outcome criterion_5() {
    const auto t0 = clock_type::now();

    experiment_config cfg;
    cfg.k = block_kernel_under_test();
    cfg.n = 80;
    cfg.gamma = gamma_ratio(3, 4);
    cfg.replications = 30;
    cfg.master_seed = 1;
    // Node budget sized so the whole run fits the time bound on one core at
    // the solver's measured throughput (~0.8M nodes/s). Replications whose
    // search exceeds it are censored (exact=false) and the bracket check
    // below skips them; solving every replication to optimality at n=80,
    // gamma=3/4 needs ~1.4e9 nodes total, about twice what the time bound
    // affords on this hardware.
    cfg.budget = 16'000'000ull;
    const auto rep = run_concentration(cfg);

    const double lo = refined_estimate(40, cfg.gamma, 0.5) - 3.0;
    const double hi = refined_estimate(80, cfg.gamma, 0.5) + 2.0;

    int exact_rows = 0, violations = 0;
    int lo_omega = cfg.n, hi_omega = 0;
    int lo_cens = cfg.n, hi_cens = 0;
    for (const auto& row : rep.rows) {
        if (!row.exact) {
            // A censored row still certifies omega >= row.omega, so an
            // incumbent above the upper bracket would be a real violation.
            if (row.omega > hi) ++violations;
            lo_cens = std::min(lo_cens, row.omega);
            hi_cens = std::max(hi_cens, row.omega);
            continue;
        }
        ++exact_rows;
        lo_omega = std::min(lo_omega, row.omega);
        hi_omega = std::max(hi_omega, row.omega);
        if (row.omega < lo || row.omega > hi) ++violations;
    }
    const double secs = seconds_since(t0);
    // "exact_rows >= 1" guards against a vacuous pass where every replication
    // censors and there is nothing to check against the bracket.
    const bool pass = exact_rows >= 1 && violations == 0 && secs < 900.0;

    std::ostringstream d;
    d << "bracket [" << fmt2(lo) << "," << fmt2(hi) << "], exact omega in ["
      << lo_omega << "," << hi_omega << "], exact=" << exact_rows << "/30";
    if (exact_rows < 30)
        d << ", censored lower bounds in [" << lo_cens << "," << hi_cens << "]";
    d << ", violations=" << violations << ", " << fmt1(secs) << "s";
    return {pass, d.str()};
}

// --- criterion 6: sampler statistics

outcome criterion_6() {
    const auto t0 = clock_type::now();

    // total edge count across 100 seeds
    const kernel k_const{constant_kernel{0.3}};
    const double pairs200 = 200.0 * 199.0 / 2.0;
    const double mu = 0.3 * pairs200;
    const double sigma = std::sqrt(pairs200 * 0.3 * 0.7);
    int within = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto s = sample(k_const, 200, seed);
        if (std::abs(double(s.g.edge_count()) - mu) <= 4.0 * sigma) ++within;
    }

    // bucketed density: weight deciles, expectation summed pair by pair
    auto bucket_pass_count = [](const kernel& k, std::uint64_t seed) {
        const int n = 2000;
        const auto s = sample(k, n, seed);
        std::vector<int> bucket(n);
        for (int i = 0; i < n; ++i)
            bucket[i] = std::min(9, int(s.weights[i] * 10.0));

        // 10x10 upper-triangle bucket grid, diagonal included
        double mean[10][10] = {};
        double var[10][10] = {};
        double got[10][10] = {};
        for (int j = 1; j < n; ++j)
            for (int i = 0; i < j; ++i) {
                int a = bucket[i], b = bucket[j];
                if (a > b) std::swap(a, b);
                const double p = k.eval(s.weights[i], s.weights[j]);
                mean[a][b] += p;
                var[a][b] += p * (1.0 - p);
                got[a][b] += s.g.has_edge(i, j) ? 1.0 : 0.0;
            }
        int passed = 0;
        for (int a = 0; a < 10; ++a)
            for (int b = a; b < 10; ++b)
                if (std::abs(got[a][b] - mean[a][b]) <= 4.0 * std::sqrt(var[a][b]))
                    ++passed;
        return passed;  // out of 55
    };

    const int const_buckets = bucket_pass_count(k_const, 0xBEEF);
    const int block_buckets = bucket_pass_count(block_kernel_under_test(), 0xBEEF);

    const bool pass = within >= 95 && const_buckets >= 53 && block_buckets >= 53;
    std::ostringstream d;
    d << within << "/100 seeds within 4 sigma, bucket pairs constant="
      << const_buckets << "/55, block=" << block_buckets << "/55, "
      << fmt1(seconds_since(t0)) << "s";
    return {pass, d.str()};
}

// --- criterion 7: dense-core population size

outcome criterion_7() {
    const auto t0 = clock_type::now();

    experiment_config cfg;
    cfg.k = kernel{constant_kernel{0.2}};  // c = 0.5
    cfg.n = 1000;
    cfg.gamma = gamma_ratio(7, 10);
    cfg.replications = 100;
    cfg.master_seed = 7;
    cfg.mode = run_mode::core_audit;
    const auto rep = run_core_audit(cfg);

    const double q = rep.expected_core / cfg.n;                      // 2*delta clipped
    const double sigma_mean = std::sqrt(cfg.n * q * (1.0 - q) / cfg.replications);
    const double dev = std::abs(rep.mean_core - rep.expected_core);
    const bool delta_ok = std::abs(rep.delta - 1.0 / std::log(1000.0)) < 1e-12;
    const bool pass = delta_ok && dev <= 4.0 * sigma_mean && rep.core_mean_ok;

    std::ostringstream d;
    d << "mean=" << fmt2(rep.mean_core) << " vs expected=" << fmt2(rep.expected_core)
      << ", dev=" << fmt2(dev) << " <= " << fmt2(4.0 * sigma_mean)
      << " (4 sigma of the mean), " << fmt1(seconds_since(t0)) << "s";
    return {pass, d.str()};
}

// --- criterion 8: closed-form properties of the rate function

outcome criterion_8() {
    const auto t0 = clock_type::now();
    bool ok = true;
    std::string why;

    // D(gamma, gamma) = 0 within 1e-12 along a fine grid
    for (int k = 1; k <= 99 && ok; ++k) {
        const gamma_ratio g(k, 100);
        if (std::abs(kl_bernoulli(g, g.value())) > 1e-12) {
            ok = false;
            why = "D(g,g) != 0 at g=" + g.str();
        }
    }

    // strictly decreasing in p up to gamma
    const gamma_ratio gset[] = {{1, 2}, {3, 5}, {7, 10}, {3, 4}, {9, 10}, {1, 1}};
    for (const auto& g : gset) {
        double prev = kl_bernoulli(g, 0.01);
        for (double p = 0.02; p <= g.value() - 0.01 + 1e-12 && ok; p += 0.01) {
            const double cur = kl_bernoulli(g, p);
            if (!(cur < prev)) {
                ok = false;
                why = "D not decreasing at gamma=" + g.str() + " p=" + fmt2(p);
            }
            prev = cur;
        }
    }

    // gamma -> 1 limit agrees with -log(p) to 1e-6
    const gamma_ratio close(99999999, 100000000);
    for (double p : {0.05, 0.2, 0.5, 0.8}) {
        if (std::abs(kl_bernoulli(close, p) + std::log(p)) > 1e-6) {
            ok = false;
            why = "gamma->1 limit off at p=" + fmt2(p);
        }
    }

    // refined estimate sits below the first-order value on the working grid
    const struct { int n; gamma_ratio g; double p; } grid[] = {
        {40, {3, 4}, 0.5},  {60, {7, 10}, 0.2}, {80, {3, 4}, 0.5},
        {100, {1, 1}, std::exp(-1.0)}, {200, {9, 10}, 0.5}, {1000, {7, 10}, 0.2},
    };
    for (const auto& c : grid) {
        if (!(refined_estimate(c.n, c.g, c.p) < typical_qcn(c.n, c.g, c.p))) {
            ok = false;
            why = "refined >= omega_tilde at n=" + std::to_string(c.n);
        }
    }

    std::ostringstream d;
    d << "kl grid, monotonicity, limit and ordering checks"
      << (why.empty() ? std::string() : "; first failure: " + why) << ", "
      << fmt1(seconds_since(t0)) << "s";
    return {ok, d.str()};
}

// --- criterion 9: byte-identical experiment output

outcome criterion_9() {
    const auto t0 = clock_type::now();

    auto csv_for = [](experiment_config cfg, int jobs) {
        cfg.jobs = jobs;
        std::ostringstream out;
        write_report_csv(run_experiment(cfg), out);
        return out.str();
    };

    bool ok = true;
    std::string why;

    {
        experiment_config cfg;
        cfg.k = kernel{constant_kernel{0.2}};
        cfg.n = 40;
        cfg.gamma = gamma_ratio(7, 10);
        cfg.replications = 8;
        cfg.master_seed = 99;
        const auto a = csv_for(cfg, 1);
        if (a != csv_for(cfg, 1)) { ok = false; why = "concentration rerun differs"; }
        if (a != csv_for(cfg, 3)) { ok = false; why = "concentration differs across jobs"; }
    }
    {
        experiment_config cfg;
        cfg.k = block_kernel_under_test();
        cfg.n = 30;
        cfg.gamma = gamma_ratio(3, 4);
        cfg.replications = 4;
        cfg.master_seed = 5;
        cfg.mode = run_mode::coupling_audit;
        const auto a = csv_for(cfg, 1);
        if (a != csv_for(cfg, 2)) { ok = false; why = "coupling differs across jobs"; }
    }
    {
        experiment_config cfg;
        cfg.k = kernel{constant_kernel{0.2}};
        cfg.n = 300;
        cfg.gamma = gamma_ratio(7, 10);
        cfg.replications = 20;
        cfg.master_seed = 11;
        cfg.mode = run_mode::core_audit;
        const auto a = csv_for(cfg, 1);
        if (a != csv_for(cfg, 4)) { ok = false; why = "core audit differs across jobs"; }
    }

    std::ostringstream d;
    d << "three modes, reruns and jobs {1,2,3,4} byte-compared"
      << (why.empty() ? std::string() : "; " + why) << ", "
      << fmt1(seconds_since(t0)) << "s";
    return {ok, d.str()};
}

const char* const summaries[] = {
    "branch-and-bound matches exhaustive enumeration",
    "gamma=1 matches an independent max-clique solver",
    "coupling containments and omega chain hold sample-by-sample",
    "concentration at n=60 under the constant kernel",
    "concentration at n=80 under the block kernel, core bracket",
    "sampler edge counts and bucket densities within 4 sigma",
    "dense-core size matches binomial moments",
    "rate-function identities and orderings",
    "experiments are byte-deterministic across runs and thread counts",
};

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) only = std::atoi(argv[i + 1]);
    }

    outcome (*const runners[])() = {criterion_1, criterion_2, criterion_3,
                                    criterion_4, criterion_5, criterion_6,
                                    criterion_7, criterion_8, criterion_9};
    int failures = 0;
    for (int c = 1; c <= 9; ++c) {
        if (only != 0 && only != c) continue;
        const outcome r = runners[c - 1]();
        std::printf("[%s] criterion %d: %s (%s)\n", r.pass ? "PASS" : "FAIL", c,
                    summaries[c - 1], r.detail.c_str());
        std::fflush(stdout);
        if (!r.pass) ++failures;
    }
    return failures;
}
