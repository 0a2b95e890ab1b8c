#pragma once

#include <utility>

#include "qc/gamma.hpp"

namespace qc {

// Closed-form quantities for one (n, gamma, p_max) configuration. All
// logarithms are natural; e appears explicitly in the refined bound.
struct theory_estimates {
    gamma_ratio gamma;
    double p_max = 0.0;
    int n = 0;
    double kl = 0.0;          // D(gamma, p_max)
    double omega_tilde = 0.0; // 2 ln(n) / kl
    double refined = 0.0;     // second-order point estimate
    bool near_degenerate = false;  // kl < 1e-6: omega_tilde is huge and fragile
};

// Bernoulli KL divergence D(gamma, p), natural log. gamma = 1 returns
// ln(1/p); gamma = p returns exactly 0.
double kl_bernoulli(const gamma_ratio& gamma, double p);

// 2 ln(n) / D(gamma, p_max). Requires p_max < gamma (Theorem hypothesis);
// otherwise throws hypothesis_error.
double typical_qcn(int n, const gamma_ratio& gamma, double p_max);

// (2/D) * (ln n - ln ln n + ln(e D / 2)) + 1, the desk-scale point estimate.
double refined_estimate(int n, const gamma_ratio& gamma, double p);

theory_estimates make_estimates(int n, const gamma_ratio& gamma, double p_max);

// [(1-eps) omega_tilde, (1+eps) omega_tilde]. eps = 0 gives the degenerate
// single-point window (accepted for limit testing); eps >= 1 is rejected.
std::pair<double, double> window(const theory_estimates& est, double epsilon);

}  // namespace qc
