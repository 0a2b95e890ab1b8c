#include "qc/harness.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <ostream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "qc/errors.hpp"
#include "qc/sampler.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qc {

namespace {

using clock_type = std::chrono::steady_clock;

double ms_since(clock_type::time_point t0) {
    return std::chrono::duration<double, std::milli>(clock_type::now() - t0).count();
}

int thread_count(int jobs) {
#ifdef _OPENMP
    return jobs > 0 ? jobs : omp_get_max_threads();
#else
    (void)jobs;
    return 1;
#endif
}

// Shortest round-trip decimal form; the reason two runs of the same config
// produce byte-identical CSV.
std::string fmt(double v) {
    std::array<char, 40> buf;
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

std::uint64_t rep_seed(const experiment_config& cfg, int rep) {
    return rng::derive(rng::derive(cfg.master_seed, seed_tag::replication),
                       static_cast<std::uint64_t>(rep));
}

// Runs one replication per index on up to `jobs` threads; the first thrown
// exception (by replication index) is rethrown after the loop, since
// exceptions must not escape an OpenMP region.
template <typename F>
void parallel_reps(int replications, int jobs, F&& body) {
    std::exception_ptr first_error;
    int error_rep = std::numeric_limits<int>::max();
    const int threads = thread_count(jobs);
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (int rep = 0; rep < replications; ++rep) {
        try {
            body(rep);
        } catch (...) {
#pragma omp critical
            if (rep < error_rep) {
                error_rep = rep;
                first_error = std::current_exception();
            }
        }
    }
    if (first_error) std::rethrow_exception(first_error);
}

void finish_omega_summary(experiment_report& rep) {
    if (rep.rows.empty()) return;
    double sum = 0.0;
    int mn = std::numeric_limits<int>::max();
    int mx = std::numeric_limits<int>::min();
    double core_sum = 0.0;
    for (const auto& row : rep.rows) {
        sum += row.omega;
        mn = std::min(mn, row.omega);
        mx = std::max(mx, row.omega);
        core_sum += row.core_size;
        if (!row.exact) ++rep.censored;
    }
    rep.mean_omega = sum / static_cast<double>(rep.rows.size());
    rep.min_omega = mn;
    rep.max_omega = mx;
    rep.mean_core = core_sum / static_cast<double>(rep.rows.size());
}

}  // namespace

run_mode parse_run_mode(const std::string& name) {
    if (name == "concentration") return run_mode::concentration;
    if (name == "coupling_audit" || name == "coupling") return run_mode::coupling_audit;
    if (name == "core_audit" || name == "core") return run_mode::core_audit;
    throw parse_error("unknown mode '" + name +
                      "' (expected concentration, coupling_audit or core_audit)");
}

std::string to_string(run_mode m) {
    switch (m) {
        case run_mode::concentration: return "concentration";
        case run_mode::coupling_audit: return "coupling_audit";
        case run_mode::core_audit: return "core_audit";
    }
    return "?";
}

experiment_config experiment_config::from_json(const nlohmann::json& j) {
    experiment_config cfg;
    try {
        if (!j.is_object()) throw parse_error("config must be a JSON object");
        cfg.k = kernel::from_json(j.at("kernel"));
        cfg.n = j.at("n").get<int>();
        const auto& g = j.at("gamma");
        if (g.is_string())
            cfg.gamma = gamma_ratio::parse(g.get<std::string>());
        else if (g.is_number_integer())
            cfg.gamma = gamma_ratio(g.get<std::int64_t>(), 1);
        else
            throw parse_error("gamma must be a string like \"7/10\" or an integer");
        cfg.replications = j.at("replications").get<int>();
        cfg.master_seed = j.at("master_seed").get<std::uint64_t>();
        if (j.contains("epsilon")) cfg.epsilon = j.at("epsilon").get<double>();
        if (j.contains("budget")) cfg.budget = j.at("budget").get<std::uint64_t>();
        if (j.contains("delta_override")) cfg.delta_override = j.at("delta_override").get<double>();
        if (j.contains("mode")) cfg.mode = parse_run_mode(j.at("mode").get<std::string>());
        if (j.contains("jobs")) cfg.jobs = j.at("jobs").get<int>();
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("experiment config: ") + e.what());
    }
    if (cfg.n < 2) throw parse_error("experiment config: n must be at least 2");
    if (cfg.replications < 1) throw parse_error("experiment config: replications must be >= 1");
    if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0))
        throw parse_error("experiment config: epsilon must lie in (0, 1)");
    if (cfg.budget < 1) throw parse_error("experiment config: budget must be >= 1");
    if (cfg.delta_override && !(*cfg.delta_override > 0.0))
        throw parse_error("experiment config: delta_override must be positive");
    if (cfg.jobs < 0) throw parse_error("experiment config: jobs must be >= 0");
    return cfg;
}

experiment_config experiment_config::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open config file " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(path + ": " + e.what());
    }
    return from_json(j);
}

experiment_report run_concentration(const experiment_config& cfg) {
    cfg.k.require_diagonal_max();
    const max_point mp = cfg.k.max_on_diagonal();
    const double delta = cfg.delta_override.value_or(default_delta(cfg.n));

    experiment_report rep;
    rep.mode = run_mode::concentration;
    rep.n = cfg.n;
    rep.gamma = cfg.gamma;
    rep.epsilon = cfg.epsilon;
    rep.master_seed = cfg.master_seed;
    rep.p_max = mp.p_max;
    rep.delta = delta;
    rep.theory = make_estimates(cfg.n, cfg.gamma, mp.p_max);  // throws before sampling
    rep.p_n = cfg.k.inf_on_square(mp.c, delta);
    rep.rows.resize(cfg.replications);

    parallel_reps(cfg.replications, cfg.jobs, [&](int r) {
        const auto t0 = clock_type::now();
        const std::uint64_t seed = rep_seed(cfg, r);
        const weighted_sample ws = sample(cfg.k, cfg.n, seed);
        const qc_result res = qc_number(ws.g, cfg.gamma, cfg.budget);
        const vertex_set core = dense_core(ws.weights, mp.c, delta);
        rep.rows[r] = {r, seed, res.size, res.exact, core.count(), rep.p_n, ms_since(t0)};
    });

    finish_omega_summary(rep);
    const auto [lo, hi] = window(*rep.theory, cfg.epsilon);
    int in_window = 0;
    int in_refined = 0;
    for (const auto& row : rep.rows) {
        if (!row.exact) continue;  // censored rows never count as inside
        if (row.omega >= lo && row.omega <= hi) ++in_window;
        if (row.omega >= rep.theory->refined - 3.0 && row.omega <= rep.theory->refined + 2.0)
            ++in_refined;
    }
    rep.frac_window = static_cast<double>(in_window) / static_cast<double>(cfg.replications);
    rep.frac_refined = static_cast<double>(in_refined) / static_cast<double>(cfg.replications);
    return rep;
}

namespace {

void check_subgraph(const graph& sub, const graph& super, std::uint64_t seed, const char* what) {
    for (int i = 0; i < sub.vertex_count(); ++i) {
        const auto a = sub.row(i);
        const auto b = super.row(i);
        for (std::size_t k = 0; k < a.size(); ++k) {
            if (a[k] & ~b[k]) throw audit_error(std::string("edge containment violated: ") + what, seed);
        }
    }
}

}  // namespace

experiment_report run_coupling_audit(const experiment_config& cfg) {
    cfg.k.require_diagonal_max();
    const max_point mp = cfg.k.max_on_diagonal();
    const double delta = cfg.delta_override.value_or(default_delta(cfg.n));
    const bool exact_audit = cfg.n <= 48;

    experiment_report rep;
    rep.mode = run_mode::coupling_audit;
    rep.n = cfg.n;
    rep.gamma = cfg.gamma;
    rep.epsilon = cfg.epsilon;
    rep.master_seed = cfg.master_seed;
    rep.p_max = mp.p_max;
    rep.delta = delta;
    rep.p_n = cfg.k.inf_on_square(mp.c, delta);
    rep.exact_audit = exact_audit;
    rep.rows.resize(cfg.replications);

    parallel_reps(cfg.replications, cfg.jobs, [&](int r) {
        const auto t0 = clock_type::now();
        const std::uint64_t seed = rep_seed(cfg, r);
        const coupled_triple trip = sample_coupled(cfg.k, cfg.n, delta, seed);

        check_subgraph(trip.g, trip.g_upper, seed, "edges(G) inside edges(G')");
        const graph core_g = induced_subgraph(trip.g, trip.core);
        const graph core_lower = induced_subgraph(trip.g_lower, trip.core);
        check_subgraph(core_lower, core_g, seed, "edges(G''[S_n]) inside edges(G[S_n])");

        replication_row row{r, seed, 0, false, trip.core.count(), trip.p_n, 0.0};
        if (exact_audit) {
            const qc_result w_g = qc_number(trip.g, cfg.gamma, cfg.budget);
            const qc_result w_up = qc_number(trip.g_upper, cfg.gamma, cfg.budget);
            const qc_result w_core = qc_number(core_g, cfg.gamma, cfg.budget);
            const qc_result w_lower = qc_number(core_lower, cfg.gamma, cfg.budget);
            if (!w_g.exact || !w_up.exact || !w_core.exact || !w_lower.exact)
                throw audit_error("solver budget exhausted during coupling audit", seed);
            if (w_lower.size > w_core.size)
                throw audit_error("omega(G''[S_n]) <= omega(G[S_n]) violated", seed);
            if (w_core.size > w_g.size)
                throw audit_error("omega(G[S_n]) <= omega(G) violated", seed);
            if (w_g.size > w_up.size) throw audit_error("omega(G) <= omega(G') violated", seed);
            row.omega = w_g.size;
            row.exact = true;
        }
        row.elapsed_ms = ms_since(t0);
        rep.rows[r] = row;
    });

    finish_omega_summary(rep);
    if (!exact_audit) rep.censored = 0;  // omega intentionally not computed at this size
    rep.violations = 0;
    return rep;
}

experiment_report run_core_audit(const experiment_config& cfg) {
    const max_point mp = cfg.k.max_on_diagonal();
    const double delta = cfg.delta_override.value_or(default_delta(cfg.n));

    experiment_report rep;
    rep.mode = run_mode::core_audit;
    rep.n = cfg.n;
    rep.gamma = cfg.gamma;
    rep.epsilon = cfg.epsilon;
    rep.master_seed = cfg.master_seed;
    rep.p_max = mp.p_max;
    rep.delta = delta;
    rep.p_n = cfg.k.inf_on_square(mp.c, delta);
    rep.rows.resize(cfg.replications);

    parallel_reps(cfg.replications, cfg.jobs, [&](int r) {
        const auto t0 = clock_type::now();
        const std::uint64_t seed = rep_seed(cfg, r);
        rng::stream ws(rng::derive(seed, seed_tag::weights));
        const std::vector<double> w = sample_weights(cfg.n, ws);
        const vertex_set core = dense_core(w, mp.c, delta);
        rep.rows[r] = {r, seed, 0, false, core.count(), rep.p_n, ms_since(t0)};
    });

    finish_omega_summary(rep);
    rep.censored = 0;
    const double q = std::min(1.0, mp.c + delta) - std::max(0.0, mp.c - delta);
    rep.expected_core = static_cast<double>(cfg.n) * q;
    rep.core_tol = 4.0 * std::sqrt(static_cast<double>(cfg.n) * q * (1.0 - q));
    rep.core_mean_ok = std::abs(rep.mean_core - rep.expected_core) <= rep.core_tol;
    return rep;
}

experiment_report run_experiment(const experiment_config& cfg) {
    switch (cfg.mode) {
        case run_mode::concentration: return run_concentration(cfg);
        case run_mode::coupling_audit: return run_coupling_audit(cfg);
        case run_mode::core_audit: return run_core_audit(cfg);
    }
    throw std::logic_error("unreachable mode");
}

void write_report_csv(const experiment_report& rep, std::ostream& out) {
    out << "rep,seed,omega,exact,core_size,p_n,elapsed_ms\n";
    for (const auto& row : rep.rows) {
        out << row.rep << ',' << row.seed << ',' << row.omega << ',' << (row.exact ? 1 : 0) << ','
            << row.core_size << ',' << fmt(row.p_n) << ",0\n";
    }
    out << "# summary: mode=" << to_string(rep.mode) << " n=" << rep.n
        << " gamma=" << rep.gamma.str() << " replications=" << rep.rows.size()
        << " master_seed=" << rep.master_seed << "\n";
    out << "# summary: p_max=" << fmt(rep.p_max) << " p_n=" << fmt(rep.p_n)
        << " delta=" << fmt(rep.delta) << " mean_core=" << fmt(rep.mean_core) << "\n";
    if (rep.mode != run_mode::core_audit) {
        out << "# summary: mean_omega=" << fmt(rep.mean_omega) << " min_omega=" << rep.min_omega
            << " max_omega=" << rep.max_omega << " censored=" << rep.censored << "\n";
    }
    if (rep.theory) {
        const auto [lo, hi] = window(*rep.theory, rep.epsilon);
        out << "# summary: kl=" << fmt(rep.theory->kl)
            << " omega_tilde=" << fmt(rep.theory->omega_tilde)
            << " refined=" << fmt(rep.theory->refined) << " epsilon=" << fmt(rep.epsilon)
            << " window_lo=" << fmt(lo) << " window_hi=" << fmt(hi)
            << " near_degenerate=" << (rep.theory->near_degenerate ? 1 : 0) << "\n";
        out << "# summary: frac_window=" << fmt(rep.frac_window)
            << " frac_refined=" << fmt(rep.frac_refined) << "\n";
    }
    if (rep.mode == run_mode::coupling_audit) {
        out << "# summary: violations=" << rep.violations
            << " exact_audit=" << (rep.exact_audit ? 1 : 0) << "\n";
    }
    if (rep.mode == run_mode::core_audit) {
        out << "# summary: expected_core=" << fmt(rep.expected_core)
            << " core_tol=" << fmt(rep.core_tol) << " core_mean_ok=" << (rep.core_mean_ok ? 1 : 0)
            << "\n";
    }
}

double fraction_in_window(const experiment_report& rep, double epsilon) {
    if (!rep.theory) throw std::invalid_argument("report carries no theory estimates");
    if (rep.rows.empty()) return 0.0;
    const auto [lo, hi] = window(*rep.theory, epsilon);
    int inside = 0;
    for (const auto& row : rep.rows) {
        if (row.exact && row.omega >= lo && row.omega <= hi) ++inside;
    }
    return static_cast<double>(inside) / static_cast<double>(rep.rows.size());
}

}  // namespace qc
