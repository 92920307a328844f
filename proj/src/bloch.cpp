#include "blochband/bloch.hpp"

#include <cmath>
#include <set>
#include <vector>

namespace blochband {

namespace {

double hermitian_deviation(const SparseC& a) {
    const SparseC diff = SparseC(a.adjoint()) - a;
    const double na = a.norm();
    return na > 0.0 ? diff.norm() / (2.0 * na) : 0.0;
}

} // namespace

BlochSystem apply_constraints(const AssembledSystem& sys, const TaggedMesh& mesh, double k) {
    using cd = std::complex<double>;
    const int n_full = static_cast<int>(sys.K.rows());
    if (n_full != mesh.dof_count())
        throw AssemblyError("apply_constraints: system size does not match the mesh");

    std::set<int> dirichlet;
    for (int n : mesh.nodes_with_tag(BoundaryTag::Dirichlet)) {
        dirichlet.insert(2 * n);
        dirichlet.insert(2 * n + 1);
    }

    const auto pairs = mesh.periodic_pairs();
    std::vector<int> slave_master(mesh.node_count(), -1);
    for (const auto& [m, s] : pairs) {
        const bool m_fixed = dirichlet.count(2 * m) > 0;
        const bool s_fixed = dirichlet.count(2 * s) > 0;
        if (m_fixed != s_fixed)
            throw AssemblyError("apply_constraints: periodic pair with only one side Dirichlet; "
                                "constrain both or neither");
        if (!m_fixed) slave_master[s] = m;
        // Fixed pairs are plain Dirichlet on both sides.
    }

    const double phase_arg = k * mesh.period;
    cd phase(std::cos(phase_arg), std::sin(phase_arg));
    // Snap numerically real phases so k d in {0, +-pi, 2 pi} yields real systems.
    if (std::abs(phase.imag()) < 1e-14) phase.imag(0.0);

    std::vector<int> reduced_index(n_full, -1);
    int n_red = 0;
    for (int dof = 0; dof < n_full; ++dof) {
        const int node = dof / 2;
        if (dirichlet.count(dof) || slave_master[node] >= 0) continue;
        reduced_index[dof] = n_red++;
    }

    std::vector<Eigen::Triplet<cd>> tt;
    tt.reserve(n_full);
    for (int dof = 0; dof < n_full; ++dof) {
        const int node = dof / 2;
        if (dirichlet.count(dof)) continue;
        if (slave_master[node] >= 0) {
            const int mdof = 2 * slave_master[node] + (dof % 2);
            if (reduced_index[mdof] < 0)
                throw AssemblyError("apply_constraints: slave folded onto eliminated master");
            tt.emplace_back(dof, reduced_index[mdof], phase);
        } else {
            tt.emplace_back(dof, reduced_index[dof], cd(1.0, 0.0));
        }
    }

    BlochSystem out;
    out.k = k;
    out.n_full = n_full;
    out.n_reduced = n_red;
    out.T.resize(n_full, n_red);
    out.T.setFromTriplets(tt.begin(), tt.end());
    out.T.makeCompressed();

    const SparseC kc = sys.K.cast<cd>();
    const SparseC mc = sys.M.cast<cd>();
    SparseC k_red = SparseC(out.T.adjoint()) * kc * out.T;
    SparseC m_red = SparseC(out.T.adjoint()) * mc * out.T;

    out.hermiticity_deviation =
        std::max(hermitian_deviation(k_red), hermitian_deviation(m_red));
    if (out.hermiticity_deviation > 1e-9)
        throw AssemblyError("apply_constraints: Hermiticity deviation " +
                            std::to_string(out.hermiticity_deviation) +
                            " exceeds 1e-9; assembly integrity lost");
    out.K = 0.5 * (SparseC(k_red.adjoint()) + k_red);
    out.M = 0.5 * (SparseC(m_red.adjoint()) + m_red);
    out.K.makeCompressed();
    out.M.makeCompressed();
    out.is_real = phase.imag() == 0.0;
    return out;
}

} // namespace blochband
