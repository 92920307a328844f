#pragma once

#include <Eigen/SparseCore>
#include <complex>

#include "blochband/assembly.hpp"
#include "blochband/mesh.hpp"

namespace blochband {

using SparseC = Eigen::SparseMatrix<std::complex<double>>;

// Reduced generalized eigenproblem at one wavenumber: Dirichlet DOFs
// eliminated, periodic slave DOFs folded into their masters with the Bloch
// phase e^{ikd}.
struct BlochSystem {
    double k = 0.0; // [rad/m]
    SparseC K;      // Hermitian
    SparseC M;      // Hermitian positive definite
    // Transformation with K = T^H K_full T; expands reduced vectors back to
    // the full mesh (Dirichlet rows zero, slaves phased).
    SparseC T;
    int n_full = 0;
    int n_reduced = 0;

    double hermiticity_deviation = 0.0; // relative Frobenius, before symmetrization
    bool is_real = false;               // true when all phases are real (k d in {0, pi}, or no pairs)
};

BlochSystem apply_constraints(const AssembledSystem& sys, const TaggedMesh& mesh, double k);

} // namespace blochband
