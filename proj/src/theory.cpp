#include "qc/theory.hpp"

#include <cmath>
#include <stdexcept>

#include "qc/errors.hpp"

namespace qc {

double kl_bernoulli(const gamma_ratio& gamma, double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("kl_bernoulli needs 0 < p < 1");
    if (gamma.is_zero()) throw std::invalid_argument("kl_bernoulli needs gamma > 0");
    const double g = gamma.value();
    if (g == p) return 0.0;
    if (gamma.is_one()) return -std::log(p);
    // log1p keeps the two terms from cancelling when p is close to gamma; the
    // plain form can come out as a negative epsilon there and flip the sign of
    // everything downstream. The true divergence is nonnegative, so clamp off
    // any residual rounding noise.
    const double d = g - p;
    const double kl = -g * std::log1p(-d / g) - (1.0 - g) * std::log1p(d / (1.0 - g));
    return kl < 0.0 ? 0.0 : kl;
}

namespace {

double checked_kl(int n, int min_n, const gamma_ratio& gamma, double p_max) {
    if (n < min_n) throw std::invalid_argument("n too small for this estimate");
    if (!(p_max > 0.0 && p_max < 1.0)) throw std::invalid_argument("p_max must lie in (0, 1)");
    if (gamma.value() <= p_max)
        throw hypothesis_error("Theorem hypothesis p_max < gamma <= 1 violated (gamma = " +
                               gamma.str() + ", p_max = " + std::to_string(p_max) + ")");
    return kl_bernoulli(gamma, p_max);
}

}  // namespace

double typical_qcn(int n, const gamma_ratio& gamma, double p_max) {
    const double kl = checked_kl(n, 2, gamma, p_max);
    return 2.0 * std::log(static_cast<double>(n)) / kl;
}

double refined_estimate(int n, const gamma_ratio& gamma, double p) {
    const double kl = checked_kl(n, 3, gamma, p);
    const double ln_n = std::log(static_cast<double>(n));
    return 2.0 / kl * (ln_n - std::log(ln_n) + std::log(std::exp(1.0) * kl / 2.0)) + 1.0;
}

theory_estimates make_estimates(int n, const gamma_ratio& gamma, double p_max) {
    theory_estimates est;
    est.gamma = gamma;
    est.p_max = p_max;
    est.n = n;
    est.kl = checked_kl(n, 3, gamma, p_max);
    est.omega_tilde = 2.0 * std::log(static_cast<double>(n)) / est.kl;
    est.refined = refined_estimate(n, gamma, p_max);
    est.near_degenerate = est.kl < 1e-6;
    return est;
}

std::pair<double, double> window(const theory_estimates& est, double epsilon) {
    if (!(epsilon >= 0.0 && epsilon < 1.0))
        throw std::invalid_argument("epsilon must lie in [0, 1)");
    return {(1.0 - epsilon) * est.omega_tilde, (1.0 + epsilon) * est.omega_tilde};
}

}  // namespace qc
