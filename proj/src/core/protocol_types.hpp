#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "atomdynamics.hpp"
#include "hilbert.hpp"

namespace qswap::protocol {

enum class BellKind { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

std::string bell_name(BellKind kind); // "phi+" | "phi-" | "psi+" | "psi-"
std::optional<BellKind> bell_from_name(const std::string& name);

/// One of the four Bell states on an ordered atom pair, realized on the
/// level pair (f,g) for cascade species or (b,c) for lambda species.
struct BellTarget {
    BellKind kind;
    atoms::AtomSpecies species;
    std::string atom_a, atom_b;
};

/// Normalized two-atom Bell state on the pair's full level space.
StateVector bell_state(const BellTarget& target);

/// Norm of  Psi-_12 ⊗ Psi-_34  minus the equal-weight all-plus combination
/// (1/2) Σ_X X_14 ⊗ X_23 over the four Bell states.
double bell_decomposition_residual(const atoms::AtomSpecies& species);

/// Sign pattern (s_psi+, s_psi-, s_phi+, s_phi-) that makes the pairing
/// decomposition exact, found by direct search.
std::array<int, 4> bell_decomposition_signs(const atoms::AtomSpecies& species);

// ---- protocol steps ----------------------------------------------------

struct PrepareAtom {
    std::string atom;
    std::string level;
    bool operator==(const PrepareAtom&) const = default;
};
struct PrepareFieldCoherent {
    double alpha;
    bool operator==(const PrepareFieldCoherent&) const = default;
};
struct PrepareFieldFockPlus {
    bool operator==(const PrepareFieldFockPlus&) const = default;
};
struct PrepareFieldVacuum {
    bool operator==(const PrepareFieldVacuum&) const = default;
};
struct Rotate {
    std::string atom;
    atoms::RotationName name;
    bool operator==(const Rotate&) const = default;
};
struct InteractDispersive {
    std::string atom;
    double phi;
    bool operator==(const InteractDispersive&) const = default;
};
struct InteractResonant {
    std::string atom;
    double g_tau;
    bool operator==(const InteractResonant&) const = default;
};
struct Inject {
    double beta;
    bool operator==(const Inject&) const = default;
};
struct Measure { // branch-all
    std::string atom;
    bool operator==(const Measure&) const = default;
};
struct PostSelect {
    std::string atom;
    std::string level;
    bool operator==(const PostSelect&) const = default;
};
struct AssertFidelity {
    std::string atom_a, atom_b;
    BellKind target;
    double tolerance;
    bool operator==(const AssertFidelity&) const = default;
};
struct AssertProbability {
    std::string path; // "A3=f" or "A5=e,A2=g"
    double expected;
    double tolerance;
    bool operator==(const AssertProbability&) const = default;
};

using Step = std::variant<PrepareAtom, PrepareFieldCoherent, PrepareFieldFockPlus,
                          PrepareFieldVacuum, Rotate, InteractDispersive, InteractResonant,
                          Inject, Measure, PostSelect, AssertFidelity, AssertProbability>;

struct AtomDecl {
    std::string label;
    atoms::AtomSpecies species;
    bool operator==(const AtomDecl&) const = default;
};

struct Protocol {
    std::string name;
    std::vector<AtomDecl> atoms;
    std::vector<std::pair<std::string, double>> params; // declaration order
    std::vector<Step> steps;

    const atoms::AtomSpecies* species_of(const std::string& label) const;
    bool operator==(const Protocol&) const = default;
};

// ---- built-in schemes --------------------------------------------------

enum class Scheme { CascadeCoherent, CascadeFock, LambdaCoherent, LambdaFock };

std::string scheme_name(Scheme s);
std::optional<Scheme> scheme_from_name(const std::string& name);
bool scheme_is_coherent(Scheme s);
atoms::AtomSpecies scheme_species(Scheme s);

/// Bell-state preparation sequence for a scheme. alpha applies to the
/// coherent schemes; g_tau overrides the disentangling Rabi angle
/// (default pi/(2 sqrt(nbar)) with nbar = round(4 alpha^2)).
Protocol builtin_preparation(Scheme scheme, BellKind target, double alpha = 2.0,
                             std::optional<double> g_tau = std::nullopt);

/// End-to-end swapping: two Psi- pairs, pass A2/A3 through the cavity,
/// disentangle, and measure out the pair. inject_sign selects the
/// coherent-scheme injection (+alpha or -alpha); ignored for Fock schemes.
Protocol builtin_swap(Scheme scheme, int inject_sign = +1, double alpha = 2.0,
                      std::optional<double> g_tau = std::nullopt);

/// Names of all built-in protocols, in fixed order.
std::vector<std::string> builtin_names();

/// Instantiates a built-in by name; nullopt for unknown names.
std::optional<Protocol> make_builtin(const std::string& name, double alpha = 2.0,
                                     std::optional<double> g_tau = std::nullopt);

} // namespace qswap::protocol
