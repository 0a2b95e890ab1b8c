#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qc/gamma.hpp"
#include "qc/kernel.hpp"
#include "qc/solver.hpp"
#include "qc/theory.hpp"

namespace qc {

enum class run_mode { concentration, coupling_audit, core_audit };

// Accepts both the config spellings (concentration, coupling_audit,
// core_audit) and the CLI short forms (coupling, core).
run_mode parse_run_mode(const std::string& name);
std::string to_string(run_mode m);

struct experiment_config {
    kernel k;
    int n = 0;
    gamma_ratio gamma;
    double epsilon = 0.5;
    int replications = 1;
    std::uint64_t master_seed = 0;
    std::uint64_t budget = default_node_budget;
    std::optional<double> delta_override;
    run_mode mode = run_mode::concentration;
    int jobs = 0;  // 0 = library default thread count

    static experiment_config from_json(const nlohmann::json& j);
    static experiment_config load_file(const std::string& path);
};

struct replication_row {
    int rep = 0;
    std::uint64_t seed = 0;
    int omega = 0;
    bool exact = false;
    int core_size = 0;
    double p_n = 0.0;
    double elapsed_ms = 0.0;  // real time; normalized to 0 in the CSV
};

struct experiment_report {
    run_mode mode = run_mode::concentration;
    int n = 0;
    gamma_ratio gamma;
    double epsilon = 0.5;
    std::uint64_t master_seed = 0;
    double p_max = 0.0;
    double p_n = 0.0;
    double delta = 0.0;
    bool exact_audit = false;
    std::optional<theory_estimates> theory;
    std::vector<replication_row> rows;

    int censored = 0;
    double frac_window = 0.0;
    double frac_refined = 0.0;
    double mean_omega = 0.0;
    int min_omega = 0;
    int max_omega = 0;
    double mean_core = 0.0;
    double expected_core = 0.0;
    double core_tol = 0.0;
    bool core_mean_ok = true;
    int violations = 0;
};

// One replication per derived seed: sample, solve exactly, record window
// membership against omega_tilde and the refined-estimate bracket.
// Throws hypothesis_error before any sampling if gamma <= p_max.
experiment_report run_concentration(const experiment_config& cfg);

// Per replication builds the coupled triple and hard-asserts the proof's
// probability-1 claims: edge containments always, and the omega chain
// w(G''[S_n]) <= w(G[S_n]) <= w(G) <= w(G') when n <= 48 (exact solving).
// A violation throws audit_error carrying the offending seed.
experiment_report run_coupling_audit(const experiment_config& cfg);

// Weights-only: records |S_n| per replication and checks the mean against
// n*q within 4*sqrt(n*q*(1-q)), q = clipped weight-interval length.
experiment_report run_core_audit(const experiment_config& cfg);

experiment_report run_experiment(const experiment_config& cfg);

// Header `rep,seed,omega,exact,core_size,p_n,elapsed_ms`, one row per
// replication, then `# summary:` comment lines. Deterministic bytes: floats
// go through shortest round-trip formatting and elapsed_ms is written as 0.
void write_report_csv(const experiment_report& rep, std::ostream& out);

// Fraction of exact rows inside [(1-eps)*omega_tilde, (1+eps)*omega_tilde];
// monotone in eps. Needs a report that carries theory estimates.
double fraction_in_window(const experiment_report& rep, double epsilon);

}  // namespace qc
