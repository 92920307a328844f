#pragma once

#include <cmath>
#include <optional>

#include "blochband/errors.hpp"

namespace blochband {

// Isotropic plane-strain elastic material. All extensive quantities are per
// unit out-of-plane depth.
struct Material {
    double mu = 0.0;     // shear modulus [Pa]
    double lambda = 0.0; // first Lame modulus [Pa]
    double rho = 0.0;    // mass density [kg/m^3]
    std::optional<double> nu; // Poisson ratio, kept when the material was built from (mu, nu)

    static Material from_lame(double mu, double lambda, double rho) {
        Material m;
        m.mu = mu;
        m.lambda = lambda;
        m.rho = rho;
        m.validate();
        return m;
    }

    // Plane strain: lambda = 2 mu nu / (1 - 2 nu).
    static Material from_nu(double mu, double nu, double rho) {
        if (!(nu >= 0.0 && nu < 0.5))
            throw ConfigError("material: Poisson ratio must satisfy 0 <= nu < 0.5");
        Material m;
        m.mu = mu;
        m.lambda = 2.0 * mu * nu / (1.0 - 2.0 * nu);
        m.rho = rho;
        m.nu = nu;
        m.validate();
        return m;
    }

    double poisson() const { return lambda / (2.0 * (lambda + mu)); }
    double youngs() const { return 2.0 * mu * (1.0 + poisson()); }
    double shear_wave_speed() const { return std::sqrt(mu / rho); }

    void validate() const {
        if (!(mu > 0.0)) throw ConfigError("material: mu must be positive");
        if (!(rho > 0.0)) throw ConfigError("material: rho must be positive");
        if (lambda < 0.0) throw ConfigError("material: lambda must be nonnegative");
        if (nu) {
            const double expected = 2.0 * mu * (*nu) / (1.0 - 2.0 * (*nu));
            const double scale = mu > 0 ? mu : 1.0;
            if (std::abs(lambda - expected) > 1e-9 * scale)
                throw ConfigError("material: lambda inconsistent with (mu, nu) under plane strain");
        }
    }
};

} // namespace blochband
