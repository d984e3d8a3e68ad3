#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hilbert.hpp"

namespace qswap::atoms {

/// Atomic level structure. Level order is fixed per kind:
/// two-level (f, e); cascade (e, f, g); lambda (a, b, c).
enum class SpeciesKind { TwoLevel, Cascade, Lambda };

struct AtomSpecies {
    SpeciesKind kind;

    int dim() const;
    const std::vector<std::string>& level_names() const;
    /// Index of a level name, -1 if the species lacks it.
    int level_index(const std::string& name) const;
    std::string name() const; // "twolevel" | "cascade" | "lambda"

    bool operator==(const AtomSpecies& o) const { return kind == o.kind; }
};

std::optional<AtomSpecies> species_from_name(const std::string& name);

enum class DispersiveConfig { Cascade, Lambda };

/// Physical coupling parameters and the derived dispersive phase.
struct CouplingParams {
    double g;     // rad/s
    double tau;   // s
    double delta; // rad/s
    double phi;   // radians, g^2 tau/delta (cascade) or 2 g^2 tau/delta (lambda)
};

/// phi = g^2 tau / delta (cascade) or 2 g^2 tau / delta (lambda).
/// Throws DimensionError on zero detuning or negative tau.
double phi_from_params(double g, double tau, double delta, DispersiveConfig config);

CouplingParams make_coupling(double g, double tau, double delta, DispersiveConfig config);

/// Rydberg-atom numbers quoted for the schemes: g = 2pi*25 kHz,
/// delta = 2pi*100 kHz, tau chosen so phi = pi per configuration.
CouplingParams feasibility_preset(DispersiveConfig config);

/// e^{-i phi (a^dag a + 1)}|e><e| + e^{i phi a^dag a}|f><f| + |g><g|
/// on (cascade atom ⊗ field).
OperatorMatrix dispersive_cascade_u(double phi, int n_max);

/// Five-term lambda dispersive operator on (lambda atom ⊗ field); at
/// phi = pi it reduces to the parity-projector form.
OperatorMatrix dispersive_lambda_u(double phi, int n_max);

/// Resonant Jaynes-Cummings evolution on (two-level atom ⊗ field),
/// block-diagonal on the doublets {|e,n>, |f,n+1>} with Rabi angle
/// g tau sqrt(n+1).
OperatorMatrix resonant_jc_u(double g_tau, int n_max);

enum class RotationName { MA, RI, R4, RC, R1Lambda, R2Lambda, K };

std::optional<RotationName> rotation_from_name(const std::string& name);
std::string rotation_name(RotationName name);

/// Named 2x2 Ramsey unitary embedded on the species' relevant level pair,
/// identity elsewhere. Throws DimensionError for an incompatible species.
OperatorMatrix rotation(RotationName name, const AtomSpecies& species);

} // namespace qswap::atoms
