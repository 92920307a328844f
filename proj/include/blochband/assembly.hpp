#pragma once

#include <Eigen/SparseCore>
#include <map>

#include "blochband/mesh.hpp"

namespace blochband {

// Full (unconstrained) plane-strain stiffness and consistent mass, both per
// unit depth. DOFs are interleaved (node i -> 2i, 2i+1).
struct AssembledSystem {
    Eigen::SparseMatrix<double> K;
    Eigen::SparseMatrix<double> M;
};

AssembledSystem assemble(const TaggedMesh& mesh,
                         const std::map<std::string, Material>& materials);

// 4x4 bar element matrix k * [e e^T, -e e^T; -e e^T, e e^T] with
// k = stiffness / length; exposed for unit tests.
Eigen::Matrix4d bar_stiffness(double stiffness, double length, double ex, double ey);

} // namespace blochband
