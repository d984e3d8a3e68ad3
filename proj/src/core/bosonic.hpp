#pragma once

#include "hilbert.hpp"

namespace qswap::bosonic {

/// Smallest n_max that keeps the Poisson tail of a coherent state with
/// |amplitude| = a below ~1e-10: ceil(a^2 + 8a + 12).
int cutoff_rule(double amplitude);

enum class CatParity { Even, Odd };

/// Field subsystem label used throughout the engine.
inline const std::string kFieldLabel = "C";

/// Truncated coherent state |alpha>, renormalized after truncation.
/// Throws CutoffError when the truncation weight exceeds 1e-10.
StateVector coherent_state(Complex alpha, int n_max, const std::string& label = kFieldLabel);

/// Exact truncated displacement operator D(beta) from closed-form
/// associated-Laguerre matrix elements.
OperatorMatrix displacement(Complex beta, int n_max);

/// Diagonal phase operator e^{i phi a^dag a}.
OperatorMatrix number_phase(double phi, int n_max);

/// (Pi_+, Pi_-) with Pi_pm = (e^{i pi a^dag a} +- 1)/2.
std::pair<OperatorMatrix, OperatorMatrix> parity_projectors(int n_max);

/// |alpha> +- |-alpha>, optionally divided by sqrt(2(1 +- e^{-2|alpha|^2})).
/// Throws CutoffError for the odd cat at alpha = 0.
StateVector cat_state(Complex alpha, CatParity parity, int n_max, bool normalized,
                      const std::string& label = kFieldLabel);

/// (|0>+|1>)/sqrt(2).
StateVector fock_plus_state(int n_max, const std::string& label = kFieldLabel);

/// Vacuum |0>.
StateVector vacuum_state(int n_max, const std::string& label = kFieldLabel);

/// Weight of a field state on the top three Fock levels; constructions and
/// the engine require this to stay below 1e-8.
double truncation_weight(const Vec& amps);

} // namespace qswap::bosonic
