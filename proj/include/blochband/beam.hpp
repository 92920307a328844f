#pragma once

#include <utility>
#include <vector>

#include "blochband/errors.hpp"
#include "blochband/material.hpp"

namespace blochband {

// Euler-Bernoulli beam on periodic simple supports, used as an independent
// low-frequency reference for the plain deck. Quantities are per unit depth;
// the bending modulus uses the plane-strain effective value E/(1 - nu^2).
struct BeamSpec {
    double d = 0.0;    // span between supports [m]
    double ei = 0.0;   // bending stiffness per depth [N m]
    double rho_a = 0.0; // mass per length per depth [kg/m^2]

    static BeamSpec from_deck(double d, double thickness, const Material& mat) {
        const double nu = mat.poisson();
        const double e_eff = mat.youngs() / (1.0 - nu * nu);
        BeamSpec b;
        b.d = d;
        b.ei = e_eff * thickness * thickness * thickness / 12.0;
        b.rho_a = mat.rho * thickness;
        b.validate();
        return b;
    }

    void validate() const {
        if (!(d > 0.0 && ei > 0.0 && rho_a > 0.0))
            throw ConfigError("beam: all of d, EI, rhoA must be positive");
    }

    // Pinned-pinned fundamental of one span, the classical opening frequency
    // of the first passband.
    double pinned_fundamental_hz() const;
};

// All real Bloch phases k d in [0, pi] at which a wave of frequency f
// propagates; empty when f lies in a stop band. The free-span 4x4 transfer
// matrix is reduced by the point-support constraint (zero deflection,
// continuous slope and moment, shear jump equal to the reaction) to a 2x2
// monodromy in (slope, moment), whose eigenvalues are e^{+-ikd}.
std::vector<double> beam_dispersion(const BeamSpec& spec, double f_hz);

// Half-trace of the reduced monodromy; |.| <= 1 in a passband.
double beam_half_trace(const BeamSpec& spec, double f_hz);

struct BeamBandEdge {
    double f_lo_hz = 0.0;
    double f_hi_hz = 0.0;
};

// The first n_bands passbands as ascending (lo, hi) frequency pairs, located
// by bisection on the passband indicator.
std::vector<BeamBandEdge> beam_band_edges(const BeamSpec& spec, int n_bands);

} // namespace blochband
