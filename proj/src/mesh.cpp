#include "blochband/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <set>

namespace blochband {

std::string to_string(BoundaryTag t) {
    switch (t) {
        case BoundaryTag::Dirichlet: return "dirichlet";
        case BoundaryTag::TractionFree: return "traction_free";
        case BoundaryTag::PeriodicMaster: return "periodic_master";
        case BoundaryTag::PeriodicSlave: return "periodic_slave";
    }
    return "unknown";
}

int TaggedMesh::region_id(const std::string& name) const {
    for (std::size_t i = 0; i < region_names.size(); ++i)
        if (region_names[i] == name) return static_cast<int>(i);
    throw MeshError("mesh: unknown region '" + name + "'");
}

double TaggedMesh::element_area(int e) const {
    const Tri6& t = elements.at(e);
    const auto& a = nodes[t.nodes[0]];
    const auto& b = nodes[t.nodes[1]];
    const auto& c = nodes[t.nodes[2]];
    return 0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]));
}

double TaggedMesh::link_length(int l) const {
    const LinkElement& link = links.at(l);
    const auto& a = nodes[link.n0];
    const auto& b = nodes[link.n1];
    return std::hypot(b[0] - a[0], b[1] - a[1]);
}

double TaggedMesh::total_mass(const std::map<std::string, Material>& materials) const {
    double m = 0.0;
    for (std::size_t e = 0; e < elements.size(); ++e) {
        const auto it = materials.find(region_names[elements[e].region]);
        if (it == materials.end())
            throw MeshError("mesh: no material for region '" +
                            region_names[elements[e].region] + "'");
        m += it->second.rho * element_area(static_cast<int>(e));
    }
    for (std::size_t l = 0; l < links.size(); ++l)
        m += links[l].density * links[l].width * link_length(static_cast<int>(l));
    for (const auto& pm : point_masses) m += pm.mass;
    return m;
}

double TaggedMesh::region_area(const std::string& region) const {
    const int id = region_id(region);
    double a = 0.0;
    for (std::size_t e = 0; e < elements.size(); ++e)
        if (elements[e].region == id) a += element_area(static_cast<int>(e));
    return a;
}

std::vector<int> TaggedMesh::nodes_with_tag(BoundaryTag tag) const {
    std::set<int> found;
    for (const auto& be : boundary_edges)
        if (be.tag == tag)
            for (int n : be.nodes) found.insert(n);
    return {found.begin(), found.end()};
}

std::vector<int> TaggedMesh::region_nodes(const std::string& region) const {
    const int id = region_id(region);
    std::set<int> found;
    for (const auto& el : elements)
        if (el.region == id)
            for (int n : el.nodes) found.insert(n);
    return {found.begin(), found.end()};
}

std::vector<std::pair<int, int>> TaggedMesh::periodic_pairs() const {
    const std::vector<int> masters = nodes_with_tag(BoundaryTag::PeriodicMaster);
    const std::vector<int> slaves = nodes_with_tag(BoundaryTag::PeriodicSlave);
    if (masters.size() != slaves.size())
        throw MeshError("mesh: periodic boundaries have different node counts (" +
                        std::to_string(masters.size()) + " vs " + std::to_string(slaves.size()) +
                        ")");
    const double tol = 1e-9 * period;

    // Match by transverse coordinate; each master maps to the slave at
    // master + period along the axis.
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(masters.size());
    std::vector<bool> used(slaves.size(), false);
    for (int m : masters) {
        const double tx = nodes[m][0] + (axis == 0 ? period : 0.0);
        const double ty = nodes[m][1] + (axis == 1 ? period : 0.0);
        int found = -1;
        for (std::size_t i = 0; i < slaves.size(); ++i) {
            if (used[i]) continue;
            const auto& p = nodes[slaves[i]];
            if (std::abs(p[0] - tx) <= tol && std::abs(p[1] - ty) <= tol) {
                found = static_cast<int>(i);
                break;
            }
        }
        if (found < 0)
            throw MeshError("mesh: periodic boundaries not congruent; no slave matches master " +
                            std::to_string(m));
        used[found] = true;
        pairs.emplace_back(m, slaves[found]);
    }
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

int TaggedMesh::find_node(double x, double y, double tol) const {
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (std::abs(nodes[i][0] - x) <= tol && std::abs(nodes[i][1] - y) <= tol)
            return static_cast<int>(i);
    return -1;
}

void TaggedMesh::validate() const {
    if (!(period > 0.0)) throw MeshError("mesh: period must be positive");
    const double scale = period * period;
    for (std::size_t e = 0; e < elements.size(); ++e) {
        for (int n : elements[e].nodes)
            if (n < 0 || n >= node_count())
                throw MeshError("mesh: element " + std::to_string(e) + " references invalid node");
        if (elements[e].region < 0 ||
            elements[e].region >= static_cast<int>(region_names.size()))
            throw MeshError("mesh: element " + std::to_string(e) + " has unnamed region");
        if (element_area(static_cast<int>(e)) <= 1e-16 * scale)
            throw MeshError("mesh: zero-area or inverted element " + std::to_string(e));
    }

    // Conformity: corner edges are shared by at most two elements, and every
    // boundary edge is used by exactly one.
    std::map<std::pair<int, int>, int> edge_use;
    for (const auto& el : elements) {
        for (int i = 0; i < 3; ++i) {
            int a = el.nodes[i], b = el.nodes[(i + 1) % 3];
            if (a > b) std::swap(a, b);
            ++edge_use[{a, b}];
        }
    }
    for (const auto& [edge, count] : edge_use)
        if (count > 2)
            throw MeshError("mesh: non-conforming edge shared by " + std::to_string(count) +
                            " elements");
    for (const auto& be : boundary_edges) {
        int a = be.nodes[0], b = be.nodes[1];
        if (a > b) std::swap(a, b);
        auto it = edge_use.find({a, b});
        if (it == edge_use.end() || it->second != 1)
            throw MeshError("mesh: boundary edge is not on the boundary");
    }

    if (!nodes_with_tag(BoundaryTag::PeriodicMaster).empty()) periodic_pairs();
}

void TaggedMesh::write_text(std::ostream& os) const {
    os << "# blochband mesh: nodes " << nodes.size() << ", elements " << elements.size()
       << ", links " << links.size() << "\n";
    os << "nodes " << nodes.size() << "\n";
    for (std::size_t i = 0; i < nodes.size(); ++i)
        os << i << " " << nodes[i][0] << " " << nodes[i][1] << "\n";
    os << "elements " << elements.size() << "\n";
    for (std::size_t e = 0; e < elements.size(); ++e) {
        os << e << " " << region_names[elements[e].region];
        for (int n : elements[e].nodes) os << " " << n;
        os << "\n";
    }
    os << "boundary_edges " << boundary_edges.size() << "\n";
    for (const auto& be : boundary_edges)
        os << to_string(be.tag) << " " << be.nodes[0] << " " << be.nodes[1] << " " << be.nodes[2]
           << "\n";
    os << "links " << links.size() << "\n";
    for (const auto& l : links)
        os << l.n0 << " " << l.n1 << " " << l.stiffness << " " << l.density << " " << l.width
           << "\n";
}

TaggedMesh replicate_stack(const TaggedMesh& cell, int n_cells) {
    if (n_cells < 1) throw ConfigError("replicate_stack: n_cells must be >= 1");
    const auto pairs = cell.periodic_pairs();

    TaggedMesh out;
    out.region_names = cell.region_names;
    out.period = cell.period;
    out.axis = cell.axis;

    const int n_nodes = cell.node_count();
    // node_map[j][i] = id of original node i in copy j.
    std::vector<std::vector<int>> node_map(n_cells, std::vector<int>(n_nodes, -1));

    for (int j = 0; j < n_cells; ++j) {
        // Masters of copy j > 0 coincide with slaves of copy j - 1.
        std::map<int, int> inherit;
        if (j > 0)
            for (const auto& [m, s] : pairs) inherit[m] = node_map[j - 1][s];
        for (int i = 0; i < n_nodes; ++i) {
            auto it = inherit.find(i);
            if (it != inherit.end()) {
                node_map[j][i] = it->second;
                continue;
            }
            std::array<double, 2> p = cell.nodes[i];
            p[cell.axis] += j * cell.period;
            node_map[j][i] = static_cast<int>(out.nodes.size());
            out.nodes.push_back(p);
        }
        for (const auto& el : cell.elements) {
            Tri6 t = el;
            for (auto& n : t.nodes) n = node_map[j][n];
            out.elements.push_back(t);
        }
        for (const auto& be : cell.boundary_edges) {
            BoundaryEdge e = be;
            if (be.tag == BoundaryTag::PeriodicMaster) {
                if (j != 0) continue; // merged interior interface
                e.tag = BoundaryTag::Dirichlet;
            } else if (be.tag == BoundaryTag::PeriodicSlave) {
                if (j != n_cells - 1) continue;
                e.tag = BoundaryTag::TractionFree;
            }
            for (auto& n : e.nodes) n = node_map[j][n];
            out.boundary_edges.push_back(e);
        }
        for (const auto& l : cell.links) {
            LinkElement nl = l;
            nl.n0 = node_map[j][l.n0];
            nl.n1 = node_map[j][l.n1];
            out.links.push_back(nl);
        }
        for (const auto& pm : cell.point_masses)
            out.point_masses.push_back({node_map[j][pm.node], pm.mass});
    }

    const int expected =
        n_cells * n_nodes - (n_cells - 1) * static_cast<int>(pairs.size());
    if (out.node_count() != expected)
        throw MeshError("replicate_stack: interface merge failed; expected " +
                        std::to_string(expected) + " nodes, produced " +
                        std::to_string(out.node_count()));
    return out;
}

TaggedMesh strip_constraints(const TaggedMesh& cell) {
    TaggedMesh out = cell;
    for (auto& be : out.boundary_edges) be.tag = BoundaryTag::TractionFree;
    return out;
}

} // namespace blochband
