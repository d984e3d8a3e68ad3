#include "bosonic.hpp"

#include <cmath>

namespace qswap::bosonic {

int cutoff_rule(double amplitude) {
    double a = std::abs(amplitude);
    return static_cast<int>(std::ceil(a * a + 8.0 * a + 12.0));
}

namespace {

// Exact (untruncated-normalization) coherent amplitudes C_n up to n_max.
Vec coherent_amplitudes(Complex alpha, int n_max) {
    Vec c(n_max + 1);
    const double a = std::abs(alpha);
    if (a == 0.0) {
        c.setZero();
        c(0) = 1.0;
        return c;
    }
    const double arg = std::arg(alpha);
    const double la = std::log(a);
    for (int n = 0; n <= n_max; ++n) {
        double logmag = -0.5 * a * a + n * la - 0.5 * std::lgamma(n + 1.0);
        c(n) = std::polar(std::exp(logmag), n * arg);
    }
    return c;
}

void check_cutoff(const Vec& raw, Complex alpha, int n_max) {
    double kept = raw.squaredNorm();
    if (1.0 - kept > 1e-10)
        throw CutoffError("Fock cutoff " + std::to_string(n_max) +
                          " too small for amplitude " + std::to_string(std::abs(alpha)));
    if (truncation_weight(raw) > 1e-8)
        throw CutoffError("field state carries weight > 1e-8 on the top Fock levels");
}

} // namespace

double truncation_weight(const Vec& amps) {
    const Eigen::Index n = amps.size();
    double w = 0.0;
    for (Eigen::Index i = std::max<Eigen::Index>(0, n - 3); i < n; ++i)
        w += std::norm(amps(i));
    return w;
}

StateVector coherent_state(Complex alpha, int n_max, const std::string& label) {
    if (n_max < 1) throw CutoffError("n_max must be >= 1");
    Vec raw = coherent_amplitudes(alpha, n_max);
    check_cutoff(raw, alpha, n_max);
    StateVector s{CompositeSpace({n_max + 1}, {label}), std::move(raw)};
    return s.normalized();
}

OperatorMatrix displacement(Complex beta, int n_max) {
    const int d = n_max + 1;
    Mat m(d, d);
    const double x = std::norm(beta); // |beta|^2
    if (x == 0.0) {
        m.setIdentity();
        return {std::move(m), true};
    }
    const double lb = 0.5 * std::log(x);
    const double argb = std::arg(beta);
    const double argmb = std::arg(-std::conj(beta));
    // <row|D|col>; for row >= col use L_col^{(row-col)}, otherwise the
    // conjugate-transposed form with -conj(beta).
    for (int col = 0; col < d; ++col) {
        for (int row = 0; row < d; ++row) {
            int lo = std::min(row, col), hi = std::max(row, col);
            int k = hi - lo;
            // associated Laguerre L_lo^{(k)}(x) by recurrence
            double lprev = 1.0, lcur = 1.0 + k - x;
            if (lo == 0) lcur = lprev;
            else {
                for (int i = 1; i < lo; ++i) {
                    double lnext = ((2.0 * i + 1.0 + k - x) * lcur - (i + k) * lprev) / (i + 1.0);
                    lprev = lcur;
                    lcur = lnext;
                }
            }
            double logmag = 0.5 * (std::lgamma(lo + 1.0) - std::lgamma(hi + 1.0)) + k * lb - 0.5 * x;
            double phase = k * (row >= col ? argb : argmb);
            double sign = (lcur < 0.0) ? -1.0 : 1.0;
            double mag = std::abs(lcur) * std::exp(logmag);
            m(row, col) = sign * std::polar(mag, phase);
        }
    }
    return {std::move(m), true};
}

OperatorMatrix number_phase(double phi, int n_max) {
    const int d = n_max + 1;
    Mat m = Mat::Zero(d, d);
    for (int n = 0; n < d; ++n) m(n, n) = std::polar(1.0, phi * n);
    return {std::move(m), true};
}

std::pair<OperatorMatrix, OperatorMatrix> parity_projectors(int n_max) {
    const int d = n_max + 1;
    Mat plus = Mat::Zero(d, d), minus = Mat::Zero(d, d);
    for (int n = 0; n < d; ++n) {
        double parity = (n % 2 == 0) ? 1.0 : -1.0;
        plus(n, n) = 0.5 * (parity + 1.0);
        minus(n, n) = 0.5 * (parity - 1.0);
    }
    return {{std::move(plus), false}, {std::move(minus), false}};
}

StateVector cat_state(Complex alpha, CatParity parity, int n_max, bool normalized,
                      const std::string& label) {
    const double sign = (parity == CatParity::Even) ? 1.0 : -1.0;
    if (parity == CatParity::Odd && std::abs(alpha) == 0.0)
        throw CutoffError("odd cat state at alpha = 0 is the zero vector");
    Vec plus = coherent_amplitudes(alpha, n_max);
    Vec minus = coherent_amplitudes(-alpha, n_max);
    check_cutoff(plus, alpha, n_max);
    Vec amps = plus + sign * minus;
    if (normalized) {
        double a2 = std::norm(alpha);
        amps /= std::sqrt(2.0 * (1.0 + sign * std::exp(-2.0 * a2)));
    }
    return {CompositeSpace({n_max + 1}, {label}), std::move(amps)};
}

StateVector fock_plus_state(int n_max, const std::string& label) {
    if (n_max < 1) throw CutoffError("n_max must be >= 1 for (|0>+|1>)/sqrt(2)");
    Vec amps = Vec::Zero(n_max + 1);
    amps(0) = amps(1) = 1.0 / std::sqrt(2.0);
    return {CompositeSpace({n_max + 1}, {label}), std::move(amps)};
}

StateVector vacuum_state(int n_max, const std::string& label) {
    Vec amps = Vec::Zero(n_max + 1);
    amps(0) = 1.0;
    return {CompositeSpace({n_max + 1}, {label}), std::move(amps)};
}

} // namespace qswap::bosonic
