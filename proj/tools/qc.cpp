#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qc/errors.hpp"
#include "qc/gamma.hpp"
#include "qc/graph.hpp"
#include "qc/harness.hpp"
#include "qc/kernel.hpp"
#include "qc/sampler.hpp"
#include "qc/solver.hpp"
#include "qc/theory.hpp"

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

qc::graph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw qc::parse_error("cannot open graph file " + path);
    return qc::read_dimacs(in);
}

int cmd_solve(const std::string& graph_path, const std::string& gamma_text, std::uint64_t budget,
              int restarts, std::uint64_t seed, bool as_json) {
    const qc::graph g = load_graph(graph_path);
    const qc::gamma_ratio gamma = qc::gamma_ratio::parse(gamma_text);

    qc::qc_result res;
    if (restarts > 0) {
        qc::rng::stream rs(qc::rng::derive(seed, qc::seed_tag::heuristic));
        res = qc::heuristic(g, gamma, restarts, rs);
    } else {
        res = qc::qc_number(g, gamma, budget);
    }

    const char* tag = res.exact ? "exact" : (restarts > 0 ? "heuristic" : "budget-exhausted");
    std::cout << "omega(gamma=" << gamma.str() << ") " << (res.exact ? "=" : ">=") << " "
              << res.size << " [" << tag << "] witness_edges=" << res.witness_edges
              << " nodes=" << res.nodes_explored << " ms=" << res.wall_ms << "\n";
    if (as_json) {
        nlohmann::json j{{"size", res.size},
                         {"exact", res.exact},
                         {"witness", res.witness.members()},
                         {"witness_edges", res.witness_edges},
                         {"nodes_explored", res.nodes_explored}};
        std::cout << j.dump() << "\n";
    }
    return 0;
}

int cmd_theory(int n, const std::string& gamma_text, double pmax, double epsilon) {
    const qc::gamma_ratio gamma = qc::gamma_ratio::parse(gamma_text);
    const qc::theory_estimates est = qc::make_estimates(n, gamma, pmax);
    const auto [lo, hi] = qc::window(est, epsilon);
    if (est.near_degenerate)
        std::cerr << "warning: gamma is within 1e-6 of p_max in KL divergence; "
                     "omega_tilde is near-degenerate\n";
    std::cout << "kl,omega_tilde,refined,window_lo,window_hi\n";
    std::cout << fmt(est.kl) << ',' << fmt(est.omega_tilde) << ',' << fmt(est.refined) << ','
              << fmt(lo) << ',' << fmt(hi) << "\n";
    return 0;
}

int cmd_experiment(const std::string& cfg_path, const std::string& out_path,
                   const std::string& mode_text, int jobs, bool jobs_given) {
    qc::experiment_config cfg = qc::experiment_config::load_file(cfg_path);
    if (!mode_text.empty()) cfg.mode = qc::parse_run_mode(mode_text);
    if (jobs_given) cfg.jobs = jobs;

    const auto t0 = std::chrono::steady_clock::now();
    const qc::experiment_report report = qc::run_experiment(cfg);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    if (out_path.empty()) {
        qc::write_report_csv(report, std::cout);
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw qc::parse_error("cannot open output file " + out_path);
        qc::write_report_csv(report, out);
    }
    std::cerr << to_string(report.mode) << ": " << report.rows.size() << " replications in "
              << secs << " s\n";
    return 0;
}

int cmd_sample(const std::string& kernel_path, int n, std::uint64_t seed,
               const std::string& out_path, const std::string& sidecar_path) {
    const qc::kernel k = qc::kernel::load_file(kernel_path);
    const qc::weighted_sample s = qc::sample(k, n, seed);
    if (out_path.empty()) {
        qc::write_dimacs(s.g, std::cout);
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw qc::parse_error("cannot open output file " + out_path);
        qc::write_dimacs(s.g, out);
    }
    if (!sidecar_path.empty()) {
        std::ofstream out(sidecar_path, std::ios::binary);
        if (!out) throw qc::parse_error("cannot open sidecar file " + sidecar_path);
        qc::write_sample_sidecar(s, out);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gamma-quasi-clique toolkit: solvers, closed-form estimates, experiments"};
    app.require_subcommand(1);

    std::string graph_path;
    std::string gamma_text;
    std::uint64_t budget = qc::default_node_budget;
    int restarts = 0;
    std::uint64_t seed = 0;
    bool as_json = false;
    auto* solve = app.add_subcommand("solve", "compute omega_gamma of a DIMACS graph");
    solve->add_option("--graph", graph_path, "DIMACS edge-format file")->required();
    solve->add_option("--gamma", gamma_text, "density parameter, e.g. 7/10")->required();
    solve->add_option("--budget", budget, "exact-solver search-node budget");
    solve->add_option("--restarts", restarts, "run the heuristic only, with this many restarts");
    solve->add_option("--seed", seed, "heuristic rng seed");
    solve->add_flag("--json", as_json, "also emit the result as JSON");

    int tn = 0;
    std::string tgamma;
    double tpmax = 0.0;
    double teps = 0.5;
    auto* theory = app.add_subcommand("theory", "print kl, omega_tilde, refined, window as CSV");
    theory->add_option("--n", tn, "number of vertices")->required();
    theory->add_option("--gamma", tgamma, "density parameter, e.g. 7/10")->required();
    theory->add_option("--pmax", tpmax, "largest edge probability")->required();
    theory->add_option("--epsilon", teps, "window half-width factor (default 0.5)");

    std::string cfg_path;
    std::string out_path;
    std::string mode_text;
    int jobs = 0;
    auto* experiment =
        app.add_subcommand("experiment", "run a Monte-Carlo experiment from a JSON config");
    experiment->add_option("--config", cfg_path, "experiment config JSON")->required();
    experiment->add_option("--out", out_path, "CSV output path (default stdout)");
    experiment->add_option("--mode", mode_text, "concentration | coupling | core");
    auto* jobs_opt = experiment->add_option("--jobs", jobs, "worker threads");

    std::string kernel_path;
    std::string sample_out;
    std::string sidecar_path;
    int sn = 0;
    std::uint64_t sseed = 0;
    auto* sample = app.add_subcommand("sample", "draw one graph from a kernel and write DIMACS");
    sample->add_option("--kernel", kernel_path, "kernel config JSON")->required();
    sample->add_option("--n", sn, "number of vertices")->required();
    sample->add_option("--seed", sseed, "master seed")->required();
    sample->add_option("--out", sample_out, "DIMACS output path (default stdout)");
    sample->add_option("--sidecar", sidecar_path, "weights sidecar JSON path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return cmd_solve(graph_path, gamma_text, budget, restarts, seed, as_json);
        if (theory->parsed()) return cmd_theory(tn, tgamma, tpmax, teps);
        if (experiment->parsed())
            return cmd_experiment(cfg_path, out_path, mode_text, jobs, jobs_opt->count() > 0);
        if (sample->parsed()) return cmd_sample(kernel_path, sn, sseed, sample_out, sidecar_path);
    } catch (const qc::audit_error& e) {
        std::cerr << "audit violation: " << e.what() << "\n";
        return 2;
    } catch (const qc::hypothesis_error& e) {
        std::cerr << "hypothesis violation: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
