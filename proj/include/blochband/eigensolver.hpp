#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <complex>

#include "blochband/errors.hpp"

namespace blochband {

struct SpectralRequest {
    int n_pairs = 1;
    double shift = 0.0;      // [(rad/s)^2]; the n_pairs smallest eigenvalues at or above this
    double tolerance = 1e-9; // relative residual bound
    int max_iterations = 300;
    unsigned seed = 0x517e0u; // starting-block seed; fixed for determinism

    enum class Path { Auto, Dense, Sparse };
    Path path = Path::Auto;

    void validate() const {
        if (n_pairs < 1) throw ConfigError("spectral request: n_pairs must be >= 1");
        if (!(tolerance > 0.0 && tolerance <= 1e-4))
            throw ConfigError("spectral request: tolerance must lie in (0, 1e-4]");
        if (max_iterations < 1) throw ConfigError("spectral request: iteration budget must be >= 1");
    }
};

struct SpectralResult {
    Eigen::VectorXd values;   // ascending, real
    Eigen::MatrixXcd vectors; // M-orthonormal columns
    Eigen::VectorXd residuals; // ||K x - lambda M x|| / (||K x|| + |lambda| ||M x||)
    int iterations = 0;
};

// Smallest eigenpairs of K x = lambda M x with K complex Hermitian and M
// Hermitian positive definite. Small systems go through the dense
// decomposition; larger ones through shift-invert subspace iteration with a
// sparse factorization. Purely real systems are detected and solved in real
// arithmetic.
SpectralResult smallest_pairs(const Eigen::SparseMatrix<std::complex<double>>& K,
                              const Eigen::SparseMatrix<std::complex<double>>& M,
                              const SpectralRequest& req);

// Dense full decomposition; the test oracle for the iterative path.
SpectralResult smallest_pairs_dense(const Eigen::MatrixXcd& K, const Eigen::MatrixXcd& M,
                                    int n_pairs, double shift = 0.0);

} // namespace blochband
