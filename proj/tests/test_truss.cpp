#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "blochband/truss.hpp"

using namespace blochband;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Fig-2-class reference resonator: disk masses rho pi r^2 for r = 0.1 and
// 0.075 m at rho = 7850, gamma = 0.14 GPa, gamma1 = 0.018 GPa, beta = pi/6.
TrussResonator reference_resonator() {
    TrussResonator r;
    r.m1 = 7850.0 * kPi * 0.1 * 0.1;
    r.m2 = 7850.0 * kPi * 0.075 * 0.075;
    r.gamma = 0.14e9;
    r.gamma1 = 0.018e9;
    r.beta = kPi / 6.0;
    return r;
}

} // namespace

TEST_CASE("reference parameters reproduce the expected spectrum") {
    const TrussSpectrum s = truss_frequencies(reference_resonator());
    // Independently derived: fA = 129.797, fB = 90.887, fC = 146.861, fD = 195.813 Hz.
    CHECK(s.fA == doctest::Approx(129.797).epsilon(1e-3));
    CHECK(s.fB == doctest::Approx(90.887).epsilon(1e-3));
    CHECK(s.fC == doctest::Approx(146.861).epsilon(1e-3));
    CHECK(s.fD == doctest::Approx(195.813).epsilon(1e-3));
    CHECK(s.fB < s.fA);
    CHECK(s.f_star == s.fB);

    // Normalized with d = 4 m and v = 3194 m/s the upper horizontal mode
    // lands near 0.163.
    const double f_norm = s.fA * 4.0 / 3194.0;
    CHECK(f_norm == doctest::Approx(0.1626).epsilon(2e-3));
}

TEST_CASE("equal masses collapse the radical") {
    TrussResonator r = reference_resonator();
    r.m2 = r.m1;
    const TrussSpectrum s = truss_frequencies(r);
    const double s2 = std::sin(r.beta) * std::sin(r.beta);
    const double fa2 = (r.gamma1 + r.gamma * s2) / (2.0 * kPi * kPi * r.m1);
    const double fb2 = r.gamma * s2 / (2.0 * kPi * kPi * r.m1);
    CHECK(s.fA * s.fA == doctest::Approx(fa2).epsilon(1e-12));
    CHECK(s.fB * s.fB == doctest::Approx(fb2).epsilon(1e-12));
}

TEST_CASE("vertical-link limit decouples the masses") {
    TrussResonator r = reference_resonator();
    r.beta = 1e-9; // beta -> 0: diagonals vertical, only gamma1 couples horizontally
    const TrussSpectrum s = truss_frequencies(r);
    const double fa2 = r.gamma1 * (1.0 / r.m1 + 1.0 / r.m2) / (4.0 * kPi * kPi);
    CHECK(s.fB == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(s.fA * s.fA == doctest::Approx(fa2).epsilon(1e-9));
}

TEST_CASE("matrix oracle agrees with the closed forms") {
    const TrussResonator r = reference_resonator();
    const TrussSpectrum s = truss_frequencies(r);
    const auto f = truss_matrix_oracle(r);

    std::array<double, 4> expected = {s.fA, s.fB, s.fC, s.fD};
    std::sort(expected.begin(), expected.end());
    for (int i = 0; i < 4; ++i)
        CHECK(f[i] == doctest::Approx(expected[i]).epsilon(1e-10));
}

TEST_CASE("oracle equivalence over random resonators") {
    std::mt19937 rng(20240517);
    std::uniform_real_distribution<double> log_mass(0.0, 4.0);
    std::uniform_real_distribution<double> log_stiff(6.0, 10.0);
    std::uniform_real_distribution<double> angle(0.05, kPi / 2.0 - 0.05);

    for (int trial = 0; trial < 1000; ++trial) {
        TrussResonator r;
        r.m1 = std::pow(10.0, log_mass(rng));
        r.m2 = std::pow(10.0, log_mass(rng));
        r.gamma = std::pow(10.0, log_stiff(rng));
        r.gamma1 = std::pow(10.0, log_stiff(rng));
        r.beta = angle(rng);

        const TrussSpectrum s = truss_frequencies(r);
        std::array<double, 4> expected = {s.fA, s.fB, s.fC, s.fD};
        std::sort(expected.begin(), expected.end());
        const auto f = truss_matrix_oracle(r);
        for (int i = 0; i < 4; ++i) {
            const double denom = std::max(expected[i], 1e-12);
            CHECK(std::abs(f[i] - expected[i]) / denom < 1e-8);
        }
    }
}

TEST_CASE("zero stiffness gives four zero frequencies") {
    TrussResonator r = reference_resonator();
    r.gamma = 0.0;
    r.gamma1 = 0.0;
    for (double f : truss_matrix_oracle(r)) CHECK(f == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("frozen second mass recovers single-mass frequencies") {
    TrussResonator r = reference_resonator();
    r.m2 = 1e12;
    const double s2 = std::sin(r.beta) * std::sin(r.beta);
    const double c2 = std::cos(r.beta) * std::cos(r.beta);
    const double f_horiz = std::sqrt((r.gamma1 + 2.0 * r.gamma * s2) / r.m1) / (2.0 * kPi);
    const double f_vert = std::sqrt(2.0 * r.gamma * c2 / r.m1) / (2.0 * kPi);

    const auto f = truss_matrix_oracle(r);
    // Two frequencies collapse toward zero with the frozen mass; the two
    // others approach the single-mass horizontal/vertical values.
    CHECK(f[0] < 1e-3);
    CHECK(f[1] < 1e-3);
    std::array<double, 2> upper = {f[2], f[3]};
    std::sort(upper.begin(), upper.end());
    std::array<double, 2> expect = {f_horiz, f_vert};
    std::sort(expect.begin(), expect.end());
    CHECK(upper[0] == doctest::Approx(expect[0]).epsilon(1e-6));
    CHECK(upper[1] == doctest::Approx(expect[1]).epsilon(1e-6));
}

TEST_CASE("vertical modes carry no horizontal motion") {
    const auto impurity = truss_vertical_mode_impurity(reference_resonator());
    CHECK(impurity[0] < 1e-8);
    CHECK(impurity[1] < 1e-8);
}

TEST_CASE("frequency scaling laws") {
    const TrussResonator base = reference_resonator();
    const TrussSpectrum s0 = truss_frequencies(base);
    const double c = 3.7;

    TrussResonator heavier = base;
    heavier.m1 *= c;
    heavier.m2 *= c;
    const TrussSpectrum s1 = truss_frequencies(heavier);
    CHECK(s1.fA == doctest::Approx(s0.fA / std::sqrt(c)).epsilon(1e-12));
    CHECK(s1.fD == doctest::Approx(s0.fD / std::sqrt(c)).epsilon(1e-12));

    TrussResonator stiffer = base;
    stiffer.gamma *= c;
    stiffer.gamma1 *= c;
    const TrussSpectrum s2 = truss_frequencies(stiffer);
    CHECK(s2.fB == doctest::Approx(s0.fB * std::sqrt(c)).epsilon(1e-12));
    CHECK(s2.fC == doctest::Approx(s0.fC * std::sqrt(c)).epsilon(1e-12));
}

TEST_CASE("tune_gamma1 fixed point") {
    const TrussResonator r = reference_resonator();
    const TrussSpectrum s = truss_frequencies(r);
    const double tuned = tune_gamma1(r, s.fA);
    CHECK(tuned == doctest::Approx(r.gamma1).epsilon(1e-8));
}

TEST_CASE("tune_gamma1 symmetric closed form") {
    TrussResonator r = reference_resonator();
    r.m2 = r.m1;
    const double f_target = 140.0;
    const double s2 = std::sin(r.beta) * std::sin(r.beta);
    const double closed = 2.0 * kPi * kPi * r.m1 * f_target * f_target - r.gamma * s2;
    REQUIRE(closed > 0.0);
    const double tuned = tune_gamma1(r, f_target);
    CHECK(tuned == doctest::Approx(closed).epsilon(1e-9));
}

TEST_CASE("tune_gamma1 hits the paper-scale target") {
    const TrussResonator r = reference_resonator();
    const double f_target = 0.1699 * 3194.0 / 4.0; // ~135.67 Hz
    const double tuned = tune_gamma1(r, f_target);
    CHECK(tuned > r.gamma1); // stiffer than 0.018 GPa

    TrussResonator check = r;
    check.gamma1 = tuned;
    CHECK(truss_frequencies(check).fA == doctest::Approx(f_target).epsilon(1e-8));
}

TEST_CASE("tune_gamma1 rejects unreachable targets") {
    const TrussResonator r = reference_resonator();
    TrussResonator floor_probe = r;
    floor_probe.gamma1 = 0.0;
    const double floor = truss_frequencies(floor_probe).fA;
    CHECK_THROWS_AS(tune_gamma1(r, 0.5 * floor), InfeasibleTargetError);
    try {
        tune_gamma1(r, 0.5 * floor);
    } catch (const InfeasibleTargetError& e) {
        CHECK(e.achievable_lo == doctest::Approx(floor).epsilon(1e-10));
    }
}

TEST_CASE("invalid resonators are rejected") {
    TrussResonator r = reference_resonator();
    r.m1 = 0.0;
    CHECK_THROWS_AS(truss_frequencies(r), ConfigError);
    r = reference_resonator();
    r.beta = kPi / 2.0;
    CHECK_THROWS_AS(truss_frequencies(r), ConfigError);
    r = reference_resonator();
    r.gamma = -1.0;
    CHECK_THROWS_AS(truss_frequencies(r), ConfigError);
}
