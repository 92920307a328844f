#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "blochband/beam.hpp"

using namespace blochband;

namespace {

BeamSpec deck_beam(double nu = 0.3) {
    return BeamSpec::from_deck(4.0, 0.2, Material::from_nu(80e9, nu, 7850.0));
}

} // namespace

TEST_CASE("plane-strain deck beam properties") {
    const BeamSpec b = deck_beam();
    const double e_eff = 2.0 * 80e9 * 1.3 / (1.0 - 0.09);
    CHECK(b.ei == doctest::Approx(e_eff * 0.008 / 12.0).epsilon(1e-12));
    CHECK(b.rho_a == doctest::Approx(7850.0 * 0.2).epsilon(1e-12));
    CHECK(b.pinned_fundamental_hz() == doctest::Approx(30.585).epsilon(1e-3));
}

TEST_CASE("first passband opens at the pinned-pinned fundamental") {
    const BeamSpec b = deck_beam();
    const double f1 = b.pinned_fundamental_hz();
    CHECK(beam_dispersion(b, 1.02 * f1).size() == 1);
    CHECK(beam_dispersion(b, 0.98 * f1).empty());
    CHECK(beam_dispersion(b, 0.5 * f1).empty());
}

TEST_CASE("band edges sit at the zone center or edge") {
    const BeamSpec b = deck_beam();
    const auto bands = beam_band_edges(b, 3);
    REQUIRE(bands.size() == 3);
    for (const auto& band : bands) {
        CHECK(band.f_lo_hz < band.f_hi_hz);
        for (double f : {band.f_lo_hz, band.f_hi_hz}) {
            const double ht = beam_half_trace(b, f);
            CHECK(std::abs(std::abs(ht) - 1.0) < 1e-6);
        }
    }
    // Bands ascend and do not overlap.
    CHECK(bands[0].f_hi_hz <= bands[1].f_lo_hz);
    CHECK(bands[1].f_hi_hz <= bands[2].f_lo_hz);
    // Band 1 opens exactly at the pinned-pinned fundamental.
    CHECK(bands[0].f_lo_hz == doctest::Approx(b.pinned_fundamental_hz()).epsilon(1e-6));
}

TEST_CASE("doubling EI scales every edge by sqrt(2)") {
    const BeamSpec b = deck_beam();
    BeamSpec stiff = b;
    stiff.ei *= 2.0;
    const auto base = beam_band_edges(b, 2);
    const auto scaled = beam_band_edges(stiff, 2);
    for (std::size_t i = 0; i < base.size(); ++i) {
        CHECK(scaled[i].f_lo_hz == doctest::Approx(base[i].f_lo_hz * std::sqrt(2.0)).epsilon(1e-6));
        CHECK(scaled[i].f_hi_hz == doctest::Approx(base[i].f_hi_hz * std::sqrt(2.0)).epsilon(1e-6));
    }
}

TEST_CASE("reference deck lands near the reported standing-wave frequency") {
    // d = 4 m, s = 0.2 m, mu = 80 GPa, rho = 7850, nu assumed 0.3: the first
    // passband should open within 10% of the F = 0.0358 flexural mode.
    const BeamSpec b = deck_beam();
    const double v = std::sqrt(80e9 / 7850.0);
    const double f_norm = b.pinned_fundamental_hz() * 4.0 / v;
    CHECK(std::abs(f_norm - 0.0358) / 0.0358 < 0.10);
}

TEST_CASE("propagating solutions stay in the reduced zone") {
    const BeamSpec b = deck_beam();
    const auto bands = beam_band_edges(b, 2);
    for (double frac : {0.1, 0.35, 0.62, 0.9}) {
        const double f = bands[0].f_lo_hz + frac * (bands[0].f_hi_hz - bands[0].f_lo_hz);
        const auto kd = beam_dispersion(b, f);
        REQUIRE(kd.size() == 1);
        CHECK(kd[0] >= 0.0);
        CHECK(kd[0] <= 3.141592653589793 + 1e-12);
    }
}

TEST_CASE("monodromy stays symplectic far into the overflow-prone range") {
    const BeamSpec b = deck_beam();
    for (double f : {10.0, 1e3, 1e5, 3e6}) {
        const double ht = beam_half_trace(b, f);
        CHECK(std::isfinite(ht));
    }
    CHECK_THROWS_AS(beam_half_trace(b, 1e12), SolverError);
    CHECK_THROWS_AS(beam_half_trace(b, -1.0), ConfigError);
}

TEST_CASE("degenerate spec is rejected") {
    BeamSpec b = deck_beam();
    b.ei = 0.0;
    CHECK_THROWS_AS(beam_band_edges(b, 1), ConfigError);
}
