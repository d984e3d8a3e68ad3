#include "oracle.hpp"

#include <cmath>
#include <numbers>

namespace qswap::oracle {

Complex coherent_overlap(Complex alpha, Complex beta) {
    return std::exp(-0.5 * std::norm(alpha) - 0.5 * std::norm(beta) +
                    std::conj(beta) * alpha);
}

double cat_norm_squared(Complex alpha, bool even) {
    double t = std::exp(-2.0 * std::norm(alpha));
    return 2.0 * (even ? 1.0 + t : 1.0 - t);
}

namespace {

// |C_n|^2 for a coherent state of amplitude a: Poisson(|a|^2).
double poisson_weight(double mean, int n) {
    if (mean == 0.0) return n == 0 ? 1.0 : 0.0;
    return std::exp(-mean + n * std::log(mean) - std::lgamma(n + 1.0));
}

} // namespace

std::pair<double, double> chi_norms(Complex field_amplitude, double g_tau, int n_max) {
    const double mean = std::norm(field_amplitude);
    double nf = 0.0, ne = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        double w = poisson_weight(mean, n);
        double c = std::cos(g_tau * std::sqrt(static_cast<double>(n)));
        nf += w * c * c;
        if (n >= 1) {
            double s = std::sin(g_tau * std::sqrt(static_cast<double>(n)));
            ne += w * s * s;
        }
    }
    return {nf, ne};
}

double detection_success_probability(Complex alpha, double g_tau, int n_max) {
    return 0.5 * chi_norms(2.0 * alpha, g_tau, n_max).second;
}

double default_disentangling_gtau(double field_amplitude) {
    double nbar = std::round(field_amplitude * field_amplitude);
    if (nbar < 1.0) nbar = 1.0;
    return std::numbers::pi / (2.0 * std::sqrt(nbar));
}

} // namespace qswap::oracle
