#include "blochband/assembly.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <vector>

namespace blochband {

namespace {

// Degree-5 seven-point rule on the reference triangle (area coordinates),
// exact for the quartic consistent-mass integrand of straight-sided
// quadratic triangles.
struct QuadPoint {
    double xi, eta, w;
};
const std::array<QuadPoint, 7> kQuadrature = {{
    {1.0 / 3.0, 1.0 / 3.0, 0.225},
    {0.0597158717897698, 0.4701420641051151, 0.1323941527885062},
    {0.4701420641051151, 0.0597158717897698, 0.1323941527885062},
    {0.4701420641051151, 0.4701420641051151, 0.1323941527885062},
    {0.7974269853530873, 0.1012865073234563, 0.1259391805448271},
    {0.1012865073234563, 0.7974269853530873, 0.1259391805448271},
    {0.1012865073234563, 0.1012865073234563, 0.1259391805448271},
}};

// Quadratic shape functions on the reference triangle; corner i pairs with
// midside i+3 on edge (i, i+1).
void shape_functions(double xi, double eta, std::array<double, 6>& n,
                     std::array<std::array<double, 2>, 6>& dn) {
    const double l1 = 1.0 - xi - eta, l2 = xi, l3 = eta;
    n = {l1 * (2.0 * l1 - 1.0), l2 * (2.0 * l2 - 1.0), l3 * (2.0 * l3 - 1.0),
         4.0 * l1 * l2, 4.0 * l2 * l3, 4.0 * l3 * l1};
    // d l1 = (-1,-1), d l2 = (1,0), d l3 = (0,1)
    dn[0] = {-(4.0 * l1 - 1.0), -(4.0 * l1 - 1.0)};
    dn[1] = {4.0 * l2 - 1.0, 0.0};
    dn[2] = {0.0, 4.0 * l3 - 1.0};
    dn[3] = {4.0 * (l1 - l2), -4.0 * l2};
    dn[4] = {4.0 * l3, 4.0 * l2};
    dn[5] = {-4.0 * l3, 4.0 * (l1 - l3)};
}

} // namespace

Eigen::Matrix4d bar_stiffness(double stiffness, double length, double ex, double ey) {
    Eigen::Matrix2d p;
    p << ex * ex, ex * ey, ey * ex, ey * ey;
    Eigen::Matrix4d k;
    const double c = stiffness / length;
    k.block<2, 2>(0, 0) = c * p;
    k.block<2, 2>(2, 2) = c * p;
    k.block<2, 2>(0, 2) = -c * p;
    k.block<2, 2>(2, 0) = -c * p;
    return k;
}

AssembledSystem assemble(const TaggedMesh& mesh,
                         const std::map<std::string, Material>& materials) {
    const int n_dof = mesh.dof_count();
    std::vector<Eigen::Triplet<double>> kt, mt;
    kt.reserve(mesh.elements.size() * 144);
    mt.reserve(mesh.elements.size() * 144);

    for (std::size_t e = 0; e < mesh.elements.size(); ++e) {
        const Tri6& el = mesh.elements[e];
        const auto mat_it = materials.find(mesh.region_name(el.region));
        if (mat_it == materials.end())
            throw AssemblyError("assemble: no material for region '" +
                                mesh.region_name(el.region) + "'");
        const Material& mat = mat_it->second;

        // Straight sides: the geometric map is affine in the corners.
        const auto& p0 = mesh.nodes[el.nodes[0]];
        const auto& p1 = mesh.nodes[el.nodes[1]];
        const auto& p2 = mesh.nodes[el.nodes[2]];
        Eigen::Matrix2d jac;
        jac << p1[0] - p0[0], p2[0] - p0[0], p1[1] - p0[1], p2[1] - p0[1];
        const double det = jac.determinant();
        if (det <= 0.0)
            throw AssemblyError("assemble: non-positive Jacobian in element " +
                                std::to_string(e));
        const Eigen::Matrix2d jinv = jac.inverse();

        Eigen::Matrix3d dmat;
        dmat << mat.lambda + 2.0 * mat.mu, mat.lambda, 0.0,
                mat.lambda, mat.lambda + 2.0 * mat.mu, 0.0,
                0.0, 0.0, mat.mu;

        Eigen::Matrix<double, 12, 12> ke = Eigen::Matrix<double, 12, 12>::Zero();
        Eigen::Matrix<double, 12, 12> me = Eigen::Matrix<double, 12, 12>::Zero();
        std::array<double, 6> n;
        std::array<std::array<double, 2>, 6> dn;
        for (const auto& q : kQuadrature) {
            shape_functions(q.xi, q.eta, n, dn);
            Eigen::Matrix<double, 3, 12> b = Eigen::Matrix<double, 3, 12>::Zero();
            Eigen::Matrix<double, 2, 12> nm = Eigen::Matrix<double, 2, 12>::Zero();
            for (int a = 0; a < 6; ++a) {
                const double dx = jinv(0, 0) * dn[a][0] + jinv(1, 0) * dn[a][1];
                const double dy = jinv(0, 1) * dn[a][0] + jinv(1, 1) * dn[a][1];
                b(0, 2 * a) = dx;
                b(1, 2 * a + 1) = dy;
                b(2, 2 * a) = dy;
                b(2, 2 * a + 1) = dx;
                nm(0, 2 * a) = n[a];
                nm(1, 2 * a + 1) = n[a];
            }
            const double w = 0.5 * q.w * det; // reference triangle area 1/2
            ke += w * b.transpose() * dmat * b;
            me += (w * mat.rho) * nm.transpose() * nm;
        }

        std::array<int, 12> dofs;
        for (int a = 0; a < 6; ++a) {
            dofs[2 * a] = 2 * el.nodes[a];
            dofs[2 * a + 1] = 2 * el.nodes[a] + 1;
        }
        for (int i = 0; i < 12; ++i)
            for (int j = 0; j < 12; ++j) {
                kt.emplace_back(dofs[i], dofs[j], ke(i, j));
                mt.emplace_back(dofs[i], dofs[j], me(i, j));
            }
    }

    for (std::size_t l = 0; l < mesh.links.size(); ++l) {
        const LinkElement& link = mesh.links[l];
        const double len = mesh.link_length(static_cast<int>(l));
        if (!(len > 0.0))
            throw AssemblyError("assemble: zero-length link " + std::to_string(l));
        const double ex = (mesh.nodes[link.n1][0] - mesh.nodes[link.n0][0]) / len;
        const double ey = (mesh.nodes[link.n1][1] - mesh.nodes[link.n0][1]) / len;
        const Eigen::Matrix4d kb = bar_stiffness(link.stiffness, len, ex, ey);
        const std::array<int, 4> dofs = {2 * link.n0, 2 * link.n0 + 1, 2 * link.n1,
                                         2 * link.n1 + 1};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) kt.emplace_back(dofs[i], dofs[j], kb(i, j));
        // Distributed bar mass lumped half to each endpoint.
        const double half_mass = 0.5 * link.density * link.width * len;
        for (int nidx : {link.n0, link.n1}) {
            mt.emplace_back(2 * nidx, 2 * nidx, half_mass);
            mt.emplace_back(2 * nidx + 1, 2 * nidx + 1, half_mass);
        }
    }

    for (const auto& pm : mesh.point_masses) {
        mt.emplace_back(2 * pm.node, 2 * pm.node, pm.mass);
        mt.emplace_back(2 * pm.node + 1, 2 * pm.node + 1, pm.mass);
    }

    AssembledSystem sys;
    sys.K.resize(n_dof, n_dof);
    sys.M.resize(n_dof, n_dof);
    sys.K.setFromTriplets(kt.begin(), kt.end());
    sys.M.setFromTriplets(mt.begin(), mt.end());
    sys.K.makeCompressed();
    sys.M.makeCompressed();
    return sys;
}

} // namespace blochband
