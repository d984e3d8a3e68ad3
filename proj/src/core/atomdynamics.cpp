#include "atomdynamics.hpp"

#include <cmath>
#include <numbers>

namespace qswap::atoms {

namespace {
const std::vector<std::string> kTwoLevel = {"f", "e"};
const std::vector<std::string> kCascade = {"e", "f", "g"};
const std::vector<std::string> kLambda = {"a", "b", "c"};
} // namespace

int AtomSpecies::dim() const { return kind == SpeciesKind::TwoLevel ? 2 : 3; }

const std::vector<std::string>& AtomSpecies::level_names() const {
    switch (kind) {
    case SpeciesKind::TwoLevel: return kTwoLevel;
    case SpeciesKind::Cascade: return kCascade;
    default: return kLambda;
    }
}

int AtomSpecies::level_index(const std::string& name) const {
    const auto& names = level_names();
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return static_cast<int>(i);
    return -1;
}

std::string AtomSpecies::name() const {
    switch (kind) {
    case SpeciesKind::TwoLevel: return "twolevel";
    case SpeciesKind::Cascade: return "cascade";
    default: return "lambda";
    }
}

std::optional<AtomSpecies> species_from_name(const std::string& name) {
    if (name == "twolevel") return AtomSpecies{SpeciesKind::TwoLevel};
    if (name == "cascade") return AtomSpecies{SpeciesKind::Cascade};
    if (name == "lambda") return AtomSpecies{SpeciesKind::Lambda};
    return std::nullopt;
}

double phi_from_params(double g, double tau, double delta, DispersiveConfig config) {
    if (delta == 0.0) throw DimensionError("phi_from_params: zero detuning");
    if (tau < 0.0) throw DimensionError("phi_from_params: negative interaction time");
    double phi = g * g * tau / delta;
    return config == DispersiveConfig::Lambda ? 2.0 * phi : phi;
}

CouplingParams make_coupling(double g, double tau, double delta, DispersiveConfig config) {
    return {g, tau, delta, phi_from_params(g, tau, delta, config)};
}

CouplingParams feasibility_preset(DispersiveConfig config) {
    const double g = 2.0 * std::numbers::pi * 25e3;
    const double delta = 2.0 * std::numbers::pi * 100e3;
    const double tau = config == DispersiveConfig::Cascade ? 8e-5 : 4e-5;
    return make_coupling(g, tau, delta, config);
}

OperatorMatrix dispersive_cascade_u(double phi, int n_max) {
    const int fd = n_max + 1;
    Mat m = Mat::Zero(3 * fd, 3 * fd);
    for (int n = 0; n < fd; ++n) {
        m(0 * fd + n, 0 * fd + n) = std::polar(1.0, -phi * (n + 1)); // |e>
        m(1 * fd + n, 1 * fd + n) = std::polar(1.0, phi * n);        // |f>
        m(2 * fd + n, 2 * fd + n) = 1.0;                             // |g>
    }
    return {std::move(m), true};
}

OperatorMatrix dispersive_lambda_u(double phi, int n_max) {
    const int fd = n_max + 1;
    Mat m = Mat::Zero(3 * fd, 3 * fd);
    for (int n = 0; n < fd; ++n) {
        Complex ph = std::polar(1.0, phi * n);
        m(0 * fd + n, 0 * fd + n) = -ph;                // |a><a|
        m(1 * fd + n, 1 * fd + n) = 0.5 * (ph + 1.0);   // |b><b|
        m(1 * fd + n, 2 * fd + n) = 0.5 * (ph - 1.0);   // |b><c|
        m(2 * fd + n, 1 * fd + n) = 0.5 * (ph - 1.0);   // |c><b|
        m(2 * fd + n, 2 * fd + n) = 0.5 * (ph + 1.0);   // |c><c|
    }
    return {std::move(m), true};
}

OperatorMatrix resonant_jc_u(double g_tau, int n_max) {
    const int fd = n_max + 1;
    // two-level order (f, e): f = 0, e = 1
    Mat m = Mat::Zero(2 * fd, 2 * fd);
    m(0, 0) = 1.0; // |f,0> is stationary
    const Complex mi(0.0, -1.0);
    for (int n = 0; n + 1 < fd; ++n) {
        double angle = g_tau * std::sqrt(n + 1.0);
        double c = std::cos(angle), s = std::sin(angle);
        Eigen::Index e_n = 1 * fd + n, f_n1 = 0 * fd + n + 1;
        m(e_n, e_n) = c;
        m(f_n1, f_n1) = c;
        m(f_n1, e_n) = mi * s;
        m(e_n, f_n1) = mi * s;
    }
    m(1 * fd + n_max, 1 * fd + n_max) = 1.0; // |e,n_max> partner lies above the cutoff
    return {std::move(m), true};
}

std::optional<RotationName> rotation_from_name(const std::string& name) {
    if (name == "MA") return RotationName::MA;
    if (name == "RI") return RotationName::RI;
    if (name == "R4") return RotationName::R4;
    if (name == "RC") return RotationName::RC;
    if (name == "R1") return RotationName::R1Lambda;
    if (name == "R2") return RotationName::R2Lambda;
    if (name == "K") return RotationName::K;
    return std::nullopt;
}

std::string rotation_name(RotationName name) {
    switch (name) {
    case RotationName::MA: return "MA";
    case RotationName::RI: return "RI";
    case RotationName::R4: return "R4";
    case RotationName::RC: return "RC";
    case RotationName::R1Lambda: return "R1";
    case RotationName::R2Lambda: return "R2";
    default: return "K";
    }
}

OperatorMatrix rotation(RotationName name, const AtomSpecies& species) {
    const double is2 = 1.0 / std::sqrt(2.0);
    const Complex i(0.0, 1.0);
    Eigen::Matrix2cd block;
    std::pair<std::string, std::string> pair; // (first, second) level names
    switch (name) {
    case RotationName::MA:
        block << is2, is2, -is2, is2;
        pair = {"f", "g"};
        break;
    case RotationName::RI:
        block << is2, i * is2, i * is2, is2;
        pair = {"f", "e"};
        break;
    case RotationName::R4:
        block << 0, 1, -1, 0;
        pair = {"f", "g"};
        break;
    case RotationName::RC:
        block << 0, 1, 1, 0;
        pair = {"f", "g"};
        break;
    case RotationName::K:
        block << is2, -is2, is2, is2;
        pair = {"f", "g"};
        break;
    case RotationName::R1Lambda:
        block << 0, -1, 1, 0;
        pair = {"b", "c"};
        break;
    case RotationName::R2Lambda:
        block << 0, 1, 1, 0;
        pair = {"b", "c"};
        break;
    }
    int p = species.level_index(pair.first);
    int q = species.level_index(pair.second);
    if (p < 0 || q < 0)
        throw DimensionError("rotation " + rotation_name(name) + " needs levels (" +
                             pair.first + "," + pair.second + ") absent from species " +
                             species.name());
    Mat m = Mat::Identity(species.dim(), species.dim());
    m(p, p) = block(0, 0);
    m(p, q) = block(0, 1);
    m(q, p) = block(1, 0);
    m(q, q) = block(1, 1);
    return {std::move(m), true};
}

} // namespace qswap::atoms
