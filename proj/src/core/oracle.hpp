#pragma once

#include <complex>
#include <string>
#include <utility>

// Closed-form cross-checks computed scalar-wise, sharing no matrix code with
// the simulation engine.

namespace qswap::oracle {

using Complex = std::complex<double>;

/// <beta|alpha> = exp(-|alpha|^2/2 - |beta|^2/2 + conj(beta) alpha).
Complex coherent_overlap(Complex alpha, Complex beta);

/// Squared norm of the raw cat state |alpha> +- |-alpha>: 2(1 +- e^{-2|alpha|^2}).
double cat_norm_squared(Complex alpha, bool even);

/// (||chi_f||^2, ||chi_e||^2) for a resonant pulse of angle g tau on a
/// coherent field of the given amplitude, summed to the cutoff.
std::pair<double, double> chi_norms(Complex field_amplitude, double g_tau, int n_max);

/// Success probability of the disentangling step in the coherent schemes:
/// 1/2 ||chi_e||^2 with the field amplitude 2 alpha reached after injection.
double detection_success_probability(Complex alpha, double g_tau, int n_max);

/// Rabi angle choice sqrt(nbar) g tau = pi/2 with nbar = round(|amplitude|^2).
double default_disentangling_gtau(double field_amplitude);

} // namespace qswap::oracle
