#include "protocol_types.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "bosonic.hpp"
#include "oracle.hpp"

namespace qswap::protocol {

using atoms::AtomSpecies;
using atoms::RotationName;
using atoms::SpeciesKind;

std::string bell_name(BellKind kind) {
    switch (kind) {
    case BellKind::PhiPlus: return "phi+";
    case BellKind::PhiMinus: return "phi-";
    case BellKind::PsiPlus: return "psi+";
    default: return "psi-";
    }
}

std::optional<BellKind> bell_from_name(const std::string& name) {
    if (name == "phi+") return BellKind::PhiPlus;
    if (name == "phi-") return BellKind::PhiMinus;
    if (name == "psi+") return BellKind::PsiPlus;
    if (name == "psi-") return BellKind::PsiMinus;
    return std::nullopt;
}

namespace {

// Qubit level pair carrying the Bell correlations: (f,g) or (b,c).
std::pair<int, int> bell_levels(const AtomSpecies& species) {
    switch (species.kind) {
    case SpeciesKind::Cascade: return {species.level_index("f"), species.level_index("g")};
    case SpeciesKind::Lambda: return {species.level_index("b"), species.level_index("c")};
    default:
        throw DimensionError("Bell targets are defined for cascade and lambda species only");
    }
}

} // namespace

StateVector bell_state(const BellTarget& target) {
    auto [p, q] = bell_levels(target.species);
    const int d = target.species.dim();
    CompositeSpace space({d, d}, {target.atom_a, target.atom_b});
    Vec amps = Vec::Zero(space.total());
    const double w = 1.0 / std::sqrt(2.0);
    switch (target.kind) {
    case BellKind::PhiPlus:
        amps(p * d + p) = w;
        amps(q * d + q) = w;
        break;
    case BellKind::PhiMinus:
        amps(p * d + p) = w;
        amps(q * d + q) = -w;
        break;
    case BellKind::PsiPlus:
        amps(p * d + q) = w;
        amps(q * d + p) = w;
        break;
    case BellKind::PsiMinus:
        amps(p * d + q) = w;
        amps(q * d + p) = -w;
        break;
    }
    return {std::move(space), std::move(amps)};
}

namespace {

// |X>_{14} ⊗ |Y>_{23} flattened onto the register order (A1,A2,A3,A4).
Vec paired_product(const AtomSpecies& species, BellKind x14, BellKind y23) {
    const int d = species.dim();
    Vec b14 = bell_state({x14, species, "A1", "A4"}).amps;
    Vec b23 = bell_state({y23, species, "A2", "A3"}).amps;
    Vec out = Vec::Zero(static_cast<Eigen::Index>(d) * d * d * d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int c = 0; c < d; ++c)
                for (int e = 0; e < d; ++e)
                    out(((static_cast<Eigen::Index>(a) * d + b) * d + c) * d + e) =
                        b14(a * d + e) * b23(b * d + c);
    return out;
}

Vec psi_minus_pairs(const AtomSpecies& species) {
    StateVector p12 = bell_state({BellKind::PsiMinus, species, "A1", "A2"});
    StateVector p34 = bell_state({BellKind::PsiMinus, species, "A3", "A4"});
    return tensor_states({p12, p34}).amps;
}

const std::array<BellKind, 4> kBellOrder = {BellKind::PsiPlus, BellKind::PsiMinus,
                                            BellKind::PhiPlus, BellKind::PhiMinus};

} // namespace

double bell_decomposition_residual(const AtomSpecies& species) {
    Vec lhs = psi_minus_pairs(species);
    Vec rhs = Vec::Zero(lhs.size());
    for (BellKind k : kBellOrder) rhs += 0.5 * paired_product(species, k, k);
    return (lhs - rhs).norm();
}

std::array<int, 4> bell_decomposition_signs(const AtomSpecies& species) {
    Vec lhs = psi_minus_pairs(species);
    std::array<Vec, 4> terms;
    for (int i = 0; i < 4; ++i) terms[i] = paired_product(species, kBellOrder[i], kBellOrder[i]);
    for (int mask = 0; mask < 16; ++mask) {
        std::array<int, 4> signs;
        Vec rhs = Vec::Zero(lhs.size());
        for (int i = 0; i < 4; ++i) {
            signs[i] = (mask >> i) & 1 ? -1 : 1;
            rhs += 0.5 * signs[i] * terms[i];
        }
        if ((lhs - rhs).norm() < 1e-12) return signs;
    }
    throw Error("no sign pattern makes the pairing decomposition exact");
}

const AtomSpecies* Protocol::species_of(const std::string& label) const {
    for (const auto& a : atoms)
        if (a.label == label) return &a.species;
    return nullptr;
}

// ---- built-ins ---------------------------------------------------------

std::string scheme_name(Scheme s) {
    switch (s) {
    case Scheme::CascadeCoherent: return "cascade-coherent";
    case Scheme::CascadeFock: return "cascade-fock";
    case Scheme::LambdaCoherent: return "lambda-coherent";
    default: return "lambda-fock";
    }
}

std::optional<Scheme> scheme_from_name(const std::string& name) {
    if (name == "cascade-coherent") return Scheme::CascadeCoherent;
    if (name == "cascade-fock") return Scheme::CascadeFock;
    if (name == "lambda-coherent") return Scheme::LambdaCoherent;
    if (name == "lambda-fock") return Scheme::LambdaFock;
    return std::nullopt;
}

bool scheme_is_coherent(Scheme s) {
    return s == Scheme::CascadeCoherent || s == Scheme::LambdaCoherent;
}

AtomSpecies scheme_species(Scheme s) {
    return (s == Scheme::CascadeCoherent || s == Scheme::CascadeFock)
               ? AtomSpecies{SpeciesKind::Cascade}
               : AtomSpecies{SpeciesKind::Lambda};
}

namespace {

constexpr double kPi = std::numbers::pi;

double default_gtau(Scheme scheme, double alpha) {
    if (!scheme_is_coherent(scheme)) return kPi / 2.0;
    double nbar = std::round(4.0 * alpha * alpha); // injected field reaches |2 alpha|
    if (nbar < 1.0) nbar = 1.0;
    return kPi / (2.0 * std::sqrt(nbar));
}

void declare_atom(Protocol& p, const std::string& label, const AtomSpecies& species) {
    if (!p.species_of(label)) p.atoms.push_back({label, species});
}

// Appends the scheme's Bell-preparation sequence on (a1, a2) with auxiliary
// detection atom `aux`, including the field preparation.
void append_preparation(Protocol& p, Scheme scheme, BellKind target, const std::string& a1,
                        const std::string& a2, const std::string& aux, double alpha,
                        double g_tau) {
    const AtomSpecies species = scheme_species(scheme);
    const AtomSpecies twolevel{SpeciesKind::TwoLevel};
    declare_atom(p, a1, species);
    declare_atom(p, a2, species);
    declare_atom(p, aux, twolevel);

    const bool plus_base = (target == BellKind::PhiPlus || target == BellKind::PsiPlus);
    // Psi+- are reached from a Phi base state by one extra Ramsey rotation.
    const bool needs_rotation = (target == BellKind::PsiPlus || target == BellKind::PsiMinus);

    switch (scheme) {
    case Scheme::CascadeCoherent: {
        // base Phi+ <- inject -alpha, base Phi- <- inject +alpha;
        // psi- from Phi+ and psi+ from Phi- via R4
        const bool phi_plus_base = (target == BellKind::PhiPlus || target == BellKind::PsiMinus);
        p.steps.push_back(PrepareFieldCoherent{-alpha});
        for (const std::string& a : {a1, a2}) {
            p.steps.push_back(PrepareAtom{a, "g"});
            p.steps.push_back(Rotate{a, RotationName::MA});
            p.steps.push_back(InteractDispersive{a, kPi});
            p.steps.push_back(Rotate{a, RotationName::MA});
        }
        p.steps.push_back(Inject{phi_plus_base ? -alpha : alpha});
        p.steps.push_back(PrepareAtom{aux, "f"});
        p.steps.push_back(InteractResonant{aux, g_tau});
        p.steps.push_back(PostSelect{aux, "e"});
        if (needs_rotation) p.steps.push_back(Rotate{a2, RotationName::R4});
        break;
    }
    case Scheme::CascadeFock: {
        p.steps.push_back(PrepareFieldFockPlus{});
        for (const std::string& a : {a1, a2}) {
            p.steps.push_back(PrepareAtom{a, "g"});
            p.steps.push_back(Rotate{a, RotationName::MA});
            p.steps.push_back(InteractDispersive{a, kPi});
            p.steps.push_back(Rotate{a, RotationName::MA});
        }
        p.steps.push_back(PrepareAtom{aux, "f"});
        p.steps.push_back(InteractResonant{aux, kPi / 2.0});
        p.steps.push_back(Rotate{aux, RotationName::RI});
        p.steps.push_back(PostSelect{aux, plus_base ? "f" : "e"});
        if (needs_rotation) p.steps.push_back(Rotate{a2, RotationName::RC});
        break;
    }
    case Scheme::LambdaCoherent: {
        const bool phi_plus_base = (target == BellKind::PhiPlus || target == BellKind::PsiMinus);
        p.steps.push_back(PrepareFieldCoherent{alpha});
        for (const std::string& a : {a1, a2}) {
            p.steps.push_back(PrepareAtom{a, "b"});
            p.steps.push_back(InteractDispersive{a, kPi});
        }
        p.steps.push_back(Inject{phi_plus_base ? alpha : -alpha});
        p.steps.push_back(PrepareAtom{aux, "f"});
        p.steps.push_back(InteractResonant{aux, g_tau});
        p.steps.push_back(PostSelect{aux, "e"});
        if (needs_rotation) p.steps.push_back(Rotate{a2, RotationName::R1Lambda});
        break;
    }
    case Scheme::LambdaFock: {
        p.steps.push_back(PrepareFieldFockPlus{});
        for (const std::string& a : {a1, a2}) {
            p.steps.push_back(PrepareAtom{a, "b"});
            p.steps.push_back(InteractDispersive{a, kPi});
        }
        p.steps.push_back(PrepareAtom{aux, "f"});
        p.steps.push_back(InteractResonant{aux, kPi / 2.0});
        p.steps.push_back(Rotate{aux, RotationName::RI});
        p.steps.push_back(PostSelect{aux, plus_base ? "f" : "e"});
        if (needs_rotation) p.steps.push_back(Rotate{a2, RotationName::R2Lambda});
        break;
    }
    }
}

void record_params(Protocol& p, Scheme scheme, double alpha, double g_tau) {
    if (scheme_is_coherent(scheme)) p.params.emplace_back("alpha", alpha);
    p.params.emplace_back("gtau", g_tau);
}

} // namespace

Protocol builtin_preparation(Scheme scheme, BellKind target, double alpha,
                             std::optional<double> g_tau) {
    const double gt = g_tau.value_or(default_gtau(scheme, alpha));
    Protocol p;
    p.name = scheme_name(scheme) + "-" + bell_name(target);
    record_params(p, scheme, alpha, gt);
    append_preparation(p, scheme, target, "A1", "A2", "A3", alpha, gt);
    const double tol = scheme_is_coherent(scheme) ? 1e-8 : 1e-10;
    p.steps.push_back(AssertFidelity{"A1", "A2", target, tol});
    if (scheme_is_coherent(scheme)) {
        double expected = oracle::detection_success_probability(
            alpha, gt, bosonic::cutoff_rule(2.0 * alpha));
        p.steps.push_back(AssertProbability{"A3=e", expected, 1e-8});
    } else {
        const bool plus_base = (target == BellKind::PhiPlus || target == BellKind::PsiPlus);
        p.steps.push_back(AssertProbability{std::string("A3=") + (plus_base ? "f" : "e"),
                                            0.5, 1e-10});
    }
    return p;
}

Protocol builtin_swap(Scheme scheme, int inject_sign, double alpha,
                      std::optional<double> g_tau) {
    if (inject_sign != 1 && inject_sign != -1)
        throw ProtocolError("inject_sign must be +1 or -1");
    const double gt = g_tau.value_or(default_gtau(scheme, alpha));
    const AtomSpecies species = scheme_species(scheme);
    const AtomSpecies twolevel{SpeciesKind::TwoLevel};
    const bool coherent = scheme_is_coherent(scheme);
    const bool cascade = (species.kind == SpeciesKind::Cascade);

    Protocol p;
    p.name = "swap-" + scheme_name(scheme);
    if (coherent && inject_sign < 0) p.name += "-minus";
    record_params(p, scheme, alpha, gt);

    append_preparation(p, scheme, BellKind::PsiMinus, "A1", "A2", "D1", alpha, gt);
    append_preparation(p, scheme, BellKind::PsiMinus, "A3", "A4", "D2", alpha, gt);

    // detection stage: fresh cavity, pass A2 and A3, disentangle, measure out
    declare_atom(p, "A5", twolevel);
    if (coherent)
        p.steps.push_back(PrepareFieldCoherent{alpha});
    else
        p.steps.push_back(PrepareFieldFockPlus{});
    p.steps.push_back(InteractDispersive{"A2", kPi});
    p.steps.push_back(InteractDispersive{"A3", kPi});
    if (coherent) p.steps.push_back(Inject{inject_sign * alpha});
    p.steps.push_back(PrepareAtom{"A5", "f"});
    p.steps.push_back(InteractResonant{"A5", coherent ? gt : kPi / 2.0});
    if (!coherent) p.steps.push_back(Rotate{"A5", RotationName::RI});
    p.steps.push_back(Measure{"A5"});
    if (cascade) p.steps.push_back(Rotate{"A2", RotationName::K});
    p.steps.push_back(Measure{"A2"});
    if (cascade) p.steps.push_back(Rotate{"A3", RotationName::K});
    p.steps.push_back(Measure{"A3"});
    if (coherent) {
        double expected = oracle::detection_success_probability(
            alpha, gt, bosonic::cutoff_rule(2.0 * alpha));
        p.steps.push_back(AssertProbability{"A5=e", expected, 1e-8});
    } else {
        const char* low = cascade ? "f" : "b";
        p.steps.push_back(AssertProbability{
            std::string("A5=f,A2=") + low + ",A3=" + low, 0.125, 1e-10});
        p.steps.push_back(AssertProbability{"A5=e", 0.5, 1e-10});
    }
    return p;
}

std::vector<std::string> builtin_names() {
    std::vector<std::string> names;
    for (Scheme s : {Scheme::CascadeCoherent, Scheme::CascadeFock, Scheme::LambdaCoherent,
                     Scheme::LambdaFock})
        for (BellKind b : {BellKind::PhiPlus, BellKind::PhiMinus, BellKind::PsiPlus,
                           BellKind::PsiMinus})
            names.push_back(scheme_name(s) + "-" + bell_name(b));
    names.push_back("swap-cascade-coherent");
    names.push_back("swap-cascade-coherent-minus");
    names.push_back("swap-cascade-fock");
    names.push_back("swap-lambda-coherent");
    names.push_back("swap-lambda-coherent-minus");
    names.push_back("swap-lambda-fock");
    return names;
}

std::optional<Protocol> make_builtin(const std::string& name, double alpha,
                                     std::optional<double> g_tau) {
    std::string n = name;
    if (n.rfind("prepare-", 0) == 0) n = n.substr(8);

    for (Scheme s : {Scheme::CascadeCoherent, Scheme::CascadeFock, Scheme::LambdaCoherent,
                     Scheme::LambdaFock}) {
        const std::string sn = scheme_name(s);
        if (n == sn) return builtin_preparation(s, BellKind::PhiPlus, alpha, g_tau);
        if (n.rfind(sn + "-", 0) == 0) {
            auto bell = bell_from_name(n.substr(sn.size() + 1));
            if (bell) return builtin_preparation(s, *bell, alpha, g_tau);
        }
        if (n == "swap-" + sn || n == "swap-" + sn + "-plus")
            return builtin_swap(s, +1, alpha, g_tau);
        if (n == "swap-" + sn + "-minus" && scheme_is_coherent(s))
            return builtin_swap(s, -1, alpha, g_tau);
    }
    return std::nullopt;
}

} // namespace qswap::protocol
