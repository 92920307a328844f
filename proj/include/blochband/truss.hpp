#pragma once

#include <array>

#include "blochband/errors.hpp"

namespace blochband {

// Lumped two-mass truss model of the deck resonator system. Each mass hangs
// from the (rigid) deck by a pair of diagonal links of longitudinal stiffness
// gamma inclined at +/-beta from the vertical, and the two masses are coupled
// by a horizontal link of stiffness gamma1. Stiffnesses are spring constants
// per unit depth (force per depth per unit elongation), so their unit is Pa.
struct TrussResonator {
    double m1 = 0.0;     // [kg/m]
    double m2 = 0.0;     // [kg/m]
    double gamma = 0.0;  // diagonal link stiffness [Pa]
    double gamma1 = 0.0; // horizontal link stiffness [Pa]
    double beta = 0.0;   // diagonal inclination from the vertical [rad]

    void validate() const {
        if (!(m1 > 0.0) || !(m2 > 0.0))
            throw ConfigError("truss: masses must be positive");
        if (gamma < 0.0 || gamma1 < 0.0)
            throw ConfigError("truss: stiffnesses must be nonnegative");
        if (!(beta > 0.0 && beta < 1.5707963267948966))
            throw ConfigError("truss: beta must lie strictly between 0 and pi/2");
    }
};

// Closed-form eigenfrequencies of the truss. fA/fB are the coupled horizontal
// translations of the two masses (fB <= fA), fC/fD the uncoupled vertical
// translations of mass 1 and mass 2. f_star = min{fB, fC, fD} bounds the
// cluster of rotational/link standing waves from above.
struct TrussSpectrum {
    double fA = 0.0; // [Hz]
    double fB = 0.0;
    double fC = 0.0;
    double fD = 0.0;
    double f_star = 0.0;
};

TrussSpectrum truss_frequencies(const TrussResonator& r);

// Independent check of the closed forms: assembles the 4-DOF
// (u1x, u1y, u2x, u2y) stiffness matrix from the five bar elements (two
// diagonals per mass to the fixed deck, one horizontal bar between the
// masses), mass matrix diag(m1, m1, m2, m2), and solves the dense
// generalized eigenproblem. Returns ascending frequencies [Hz].
std::array<double, 4> truss_matrix_oracle(const TrussResonator& r);

// Horizontal components of the oracle eigenvectors at fC and fD, relative to
// the vertical ones; near zero because the vertical modes are uncoupled.
std::array<double, 2> truss_vertical_mode_impurity(const TrussResonator& r);

// Finds gamma1 >= 0 such that fA equals f_target [Hz], by bracketed root
// finding on the monotone map gamma1 -> fA. Throws InfeasibleTargetError when
// f_target < fA(gamma1 = 0).
double tune_gamma1(const TrussResonator& r, double f_target_hz,
                   double rel_tol = 1e-10);

} // namespace blochband
