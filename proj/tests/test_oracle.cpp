#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "core/oracle.hpp"

using namespace qswap::oracle;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("coherent_overlap closed form") {
    CHECK(std::abs(coherent_overlap(1.0, 1.0) - 1.0) < 1e-15);
    CHECK(std::abs(coherent_overlap(1.0, 0.0) - std::exp(-0.5)) < 1e-15);
    // |<-a|a>| = e^{-2|a|^2}
    CHECK(std::abs(std::abs(coherent_overlap(2.0, -2.0)) - std::exp(-8.0)) < 1e-15);
    // hermitian symmetry
    Complex a(0.7, -0.2), b(-1.1, 0.5);
    CHECK(std::abs(coherent_overlap(a, b) - std::conj(coherent_overlap(b, a))) < 1e-15);
}

TEST_CASE("cat_norm_squared") {
    CHECK(cat_norm_squared(0.0, true) == doctest::Approx(4.0));
    CHECK(cat_norm_squared(0.0, false) == doctest::Approx(0.0));
    double t = std::exp(-2.0);
    CHECK(cat_norm_squared(1.0, true) == doctest::Approx(2.0 * (1.0 + t)).epsilon(1e-14));
    CHECK(cat_norm_squared(1.0, false) == doctest::Approx(2.0 * (1.0 - t)).epsilon(1e-14));
}

TEST_CASE("chi norms partition unity") {
    for (double a : {0.5, 1.0, 2.0, 4.0})
        for (double gt : {kPi / 6.0, kPi / 2.0, 1.0}) {
            auto [nf, ne] = chi_norms(a, gt, 256);
            CHECK(nf + ne == doctest::Approx(1.0).epsilon(1e-12));
        }
}

TEST_CASE("chi norms at gtau = 0") {
    auto [nf, ne] = chi_norms(1.5, 0.0, 64);
    CHECK(nf == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ne == doctest::Approx(0.0));
}

TEST_CASE("detection success probability at alpha = 1") {
    // frozen reference: half the excited-state weight after a pi/4 pulse on
    // the amplitude-2 field reached by injection
    double p = detection_success_probability(1.0, kPi / 4.0, 64);
    CHECK(p == doctest::Approx(0.4263838443376186).epsilon(1e-10));
}

TEST_CASE("success probability approaches one half for large alpha") {
    double p = detection_success_probability(4.0, kPi / 16.0, 256);
    CHECK(p > 0.49);
    CHECK(p <= 0.5 + 1e-12);
}

TEST_CASE("default disentangling angle") {
    CHECK(default_disentangling_gtau(2.0) == doctest::Approx(kPi / 4.0).epsilon(1e-14));
    CHECK(default_disentangling_gtau(1.0) == doctest::Approx(kPi / 2.0).epsilon(1e-14));
    // amplitudes below one photon clamp at nbar = 1
    CHECK(default_disentangling_gtau(0.1) == doctest::Approx(kPi / 2.0).epsilon(1e-14));
}
