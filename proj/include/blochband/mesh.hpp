#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "blochband/errors.hpp"
#include "blochband/material.hpp"

namespace blochband {

enum class BoundaryTag { Dirichlet, TractionFree, PeriodicMaster, PeriodicSlave };

std::string to_string(BoundaryTag t);

// Six-node quadratic triangle with straight sides. Corners 0-1-2 are
// counter-clockwise; midside i+3 lies between corners i and (i+1)%3.
struct Tri6 {
    std::array<int, 6> nodes;
    int region = 0;
};

struct BoundaryEdge {
    std::array<int, 3> nodes; // corner, corner, midside
    BoundaryTag tag = BoundaryTag::TractionFree;
};

// 1D longitudinal bar between two mesh nodes. `stiffness` is the axial
// rigidity per unit depth [Pa m]: the assembled spring constant is
// stiffness / length. `density` and `width` size the lumped bar mass.
struct LinkElement {
    int n0 = 0;
    int n1 = 0;
    double stiffness = 0.0; // [Pa m]
    double density = 0.0;   // [kg/m^3]
    double width = 0.0;     // cross-section proxy [m]
};

struct NodeMass {
    int node = 0;
    double mass = 0.0; // [kg/m]
};

struct TaggedMesh {
    std::vector<std::array<double, 2>> nodes;
    std::vector<Tri6> elements;
    std::vector<std::string> region_names;
    std::vector<BoundaryEdge> boundary_edges;
    std::vector<LinkElement> links;
    std::vector<NodeMass> point_masses;
    double period = 0.0;
    int axis = 0; // periodicity direction: 0 = x, 1 = y

    int node_count() const { return static_cast<int>(nodes.size()); }
    int dof_count() const { return 2 * node_count(); }

    int region_id(const std::string& name) const;
    const std::string& region_name(int id) const { return region_names.at(id); }

    // Signed corner-triangle area; straight sides make this the exact area.
    double element_area(int e) const;
    double link_length(int l) const;

    // Continuum mass + lumped link mass + point masses, per unit depth.
    double total_mass(const std::map<std::string, Material>& materials) const;
    double region_area(const std::string& region) const;

    // Ascending (master, slave) node pairs matched by translation along the
    // periodicity axis. Throws MeshError when the boundaries are not
    // congruent within 1e-9 * period.
    std::vector<std::pair<int, int>> periodic_pairs() const;

    std::vector<int> nodes_with_tag(BoundaryTag tag) const;
    std::vector<int> region_nodes(const std::string& region) const;

    int find_node(double x, double y, double tol) const; // -1 when absent

    void validate() const;
    void write_text(std::ostream& os) const;
};

// Chains n congruent copies along the periodicity axis, merging the interface
// nodes. The axis-min boundary becomes Dirichlet (foundation), the axis-max
// boundary traction free.
TaggedMesh replicate_stack(const TaggedMesh& cell, int n_cells);

// All constrained/periodic boundaries retagged traction free: the free body.
TaggedMesh strip_constraints(const TaggedMesh& cell);

} // namespace blochband
