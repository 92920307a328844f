#include "blochband/mesh_builder.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace blochband {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Sorted grid lines: a uniform ladder over [lo, hi] merged with required
// coordinates. A uniform line within snap of a required one is replaced by
// it, so geometric predicates can rely on the exact required values.
std::vector<double> make_lines(double lo, double hi, double target_h,
                               std::vector<double> required) {
    const int n = std::max(1, static_cast<int>(std::ceil((hi - lo) / target_h)));
    const double step = (hi - lo) / n;
    required.push_back(lo);
    required.push_back(hi);
    std::sort(required.begin(), required.end());
    required.erase(std::unique(required.begin(), required.end(),
                               [&](double a, double b) {
                                   return b - a < 1e-12 * (hi - lo + 1.0);
                               }),
                   required.end());

    std::vector<double> lines = required;
    const double snap = 0.3 * step; // drop uniform lines that would make slivers
    for (int i = 1; i < n; ++i) {
        const double u = lo + step * i;
        bool near_required = false;
        for (double r : required)
            if (std::abs(u - r) <= snap) {
                near_required = true;
                break;
            }
        if (!near_required) lines.push_back(u);
    }
    std::sort(lines.begin(), lines.end());
    return lines;
}

// Structured triangulator over a tensor grid of cells, each assigned a region
// or left empty. Emits linear triangles; quadratic midside nodes are inserted
// afterwards over the whole mesh.
class GridMesher {
public:
    GridMesher(std::vector<double> xs, std::vector<double> ys)
        : xs_(std::move(xs)), ys_(std::move(ys)),
          cell_region_((xs_.size() - 1) * (ys_.size() - 1), -1) {}

    void fill_rect(double x0, double x1, double y0, double y1, int region) {
        for (std::size_t j = 0; j + 1 < ys_.size(); ++j) {
            const double yc = 0.5 * (ys_[j] + ys_[j + 1]);
            if (yc <= y0 || yc >= y1) continue;
            for (std::size_t i = 0; i + 1 < xs_.size(); ++i) {
                const double xc = 0.5 * (xs_[i] + xs_[i + 1]);
                if (xc <= x0 || xc >= x1) continue;
                cell_region_[j * (xs_.size() - 1) + i] = region;
            }
        }
    }

    // Appends nodes/triangles to the output arrays (corner nodes only).
    void emit(std::vector<std::array<double, 2>>& nodes, std::vector<Tri6>& tris) const {
        const std::size_t nx = xs_.size(), ny = ys_.size();
        std::vector<int> node_id(nx * ny, -1);
        auto corner = [&](std::size_t i, std::size_t j) {
            int& id = node_id[j * nx + i];
            if (id < 0) {
                id = static_cast<int>(nodes.size());
                nodes.push_back({xs_[i], ys_[j]});
            }
            return id;
        };
        for (std::size_t j = 0; j + 1 < ny; ++j) {
            for (std::size_t i = 0; i + 1 < nx; ++i) {
                const int region = cell_region_[j * (nx - 1) + i];
                if (region < 0) continue;
                const int a = corner(i, j), b = corner(i + 1, j);
                const int c = corner(i + 1, j + 1), d = corner(i, j + 1);
                // Alternate the split diagonal for isotropy.
                if ((i + j) % 2 == 0) {
                    tris.push_back({{a, b, c, -1, -1, -1}, region});
                    tris.push_back({{a, c, d, -1, -1, -1}, region});
                } else {
                    tris.push_back({{a, b, d, -1, -1, -1}, region});
                    tris.push_back({{b, c, d, -1, -1, -1}, region});
                }
            }
        }
    }

private:
    std::vector<double> xs_, ys_;
    std::vector<int> cell_region_;
};

// Polar disk mesh around (cx, cy): a fan about the center plus quad rings,
// all straight-sided. Returns the center node id.
int emit_disk(std::vector<std::array<double, 2>>& nodes, std::vector<Tri6>& tris, double cx,
              double cy, double radius, int segments, int rings, int region) {
    const int center = static_cast<int>(nodes.size());
    nodes.push_back({cx, cy});
    std::vector<std::vector<int>> ring_ids(rings);
    for (int r = 1; r <= rings; ++r) {
        const double rr = radius * r / rings;
        ring_ids[r - 1].resize(segments);
        for (int s = 0; s < segments; ++s) {
            const double th = 2.0 * kPi * s / segments;
            ring_ids[r - 1][s] = static_cast<int>(nodes.size());
            nodes.push_back({cx + rr * std::cos(th), cy + rr * std::sin(th)});
        }
    }
    for (int s = 0; s < segments; ++s) {
        const int sn = (s + 1) % segments;
        tris.push_back({{center, ring_ids[0][s], ring_ids[0][sn], -1, -1, -1}, region});
    }
    for (int r = 0; r + 1 < rings; ++r) {
        for (int s = 0; s < segments; ++s) {
            const int sn = (s + 1) % segments;
            const int a = ring_ids[r][s], b = ring_ids[r][sn];
            const int c = ring_ids[r + 1][sn], d = ring_ids[r + 1][s];
            tris.push_back({{a, b, c, -1, -1, -1}, region});
            tris.push_back({{a, c, d, -1, -1, -1}, region});
        }
    }
    return center;
}

// Inserts midside nodes (at segment midpoints) for every corner triangle.
void promote_to_quadratic(TaggedMesh& mesh) {
    std::map<std::pair<int, int>, int> midside;
    auto mid = [&](int a, int b) {
        std::pair<int, int> key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
        auto it = midside.find(key);
        if (it != midside.end()) return it->second;
        const int id = static_cast<int>(mesh.nodes.size());
        mesh.nodes.push_back({0.5 * (mesh.nodes[a][0] + mesh.nodes[b][0]),
                              0.5 * (mesh.nodes[a][1] + mesh.nodes[b][1])});
        midside[key] = id;
        return id;
    };
    for (auto& t : mesh.elements) {
        t.nodes[3] = mid(t.nodes[0], t.nodes[1]);
        t.nodes[4] = mid(t.nodes[1], t.nodes[2]);
        t.nodes[5] = mid(t.nodes[2], t.nodes[0]);
    }
    for (auto& be : mesh.boundary_edges) be.nodes[2] = mid(be.nodes[0], be.nodes[1]);
}

// Boundary edges = corner edges used by exactly one triangle; the tag is
// assigned by the caller through a geometric classifier.
template <typename Classifier>
void collect_boundary(TaggedMesh& mesh, Classifier classify) {
    std::map<std::pair<int, int>, std::pair<int, int>> edge_count; // -> (count, oriented a)
    for (const auto& t : mesh.elements) {
        for (int i = 0; i < 3; ++i) {
            const int a = t.nodes[i], b = t.nodes[(i + 1) % 3];
            auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
            auto it = edge_count.find(key);
            if (it == edge_count.end())
                edge_count[key] = {1, a};
            else
                ++it->second.first;
        }
    }
    for (const auto& [key, info] : edge_count) {
        if (info.first != 1) continue;
        const int a = info.second;
        const int b = (a == key.first) ? key.second : key.first;
        BoundaryEdge be;
        be.nodes = {a, b, -1};
        const auto& pa = mesh.nodes[a];
        const auto& pb = mesh.nodes[b];
        be.tag = classify(0.5 * (pa[0] + pb[0]), 0.5 * (pa[1] + pb[1]));
        mesh.boundary_edges.push_back(be);
    }
}

void add_link(TaggedMesh& mesh, int n0, int n1, double spring_constant, double density,
              double width) {
    LinkElement l;
    l.n0 = n0;
    l.n1 = n1;
    const double len = std::hypot(mesh.nodes[n1][0] - mesh.nodes[n0][0],
                                  mesh.nodes[n1][1] - mesh.nodes[n0][1]);
    // Stored as axial rigidity per depth so that assembly's stiffness/length
    // reproduces the requested spring constant.
    l.stiffness = spring_constant * len;
    l.density = density;
    l.width = width;
    mesh.links.push_back(l);
}

} // namespace

TaggedMesh build_deck_cell(const CellSpec& spec, const Resolution& res) {
    spec.validate();
    if (!spec.is_deck())
        throw ConfigError("build_deck_cell: spec is not a deck variant");
    if (!(res.scale > 0.0)) throw ConfigError("resolution scale must be positive");

    const double d = spec.period;
    const double s = spec.deck.thickness;
    const double patch = spec.deck.patch_width(d);
    const double h_target = s / (4.0 * res.scale);

    std::vector<double> required_x = {patch / 2.0, d - patch / 2.0};
    struct Attach {
        double x;
        int disk;
    };
    std::vector<Attach> attachments;
    const bool resonators = spec.variant == GeometryVariant::DeckWithResonators;
    std::array<double, 2> st{0.0, 0.0};
    if (resonators) {
        st = spec.deck.stations(d);
        const double tanb = std::tan(spec.deck.link_angle);
        for (int i = 0; i < 2; ++i) {
            const double reach = (spec.deck.mount_depths[i] - s / 2.0) * tanb;
            attachments.push_back({st[i] - reach, i});
            attachments.push_back({st[i] + reach, i});
            required_x.push_back(st[i] - reach);
            required_x.push_back(st[i] + reach);
        }
    }

    // Deck strip occupies [0, d] x [-s/2, s/2] so the midline is y = 0.
    const int ny = std::max(4, static_cast<int>(std::ceil(s / h_target)));
    std::vector<double> ylines;
    for (int j = 0; j <= ny; ++j) ylines.push_back(-s / 2.0 + s * j / ny);

    TaggedMesh mesh;
    mesh.period = d;
    mesh.axis = 0;
    mesh.region_names = {"deck"};

    GridMesher grid(make_lines(0.0, d, h_target, required_x), ylines);
    grid.fill_rect(-1.0, d + 1.0, -s, s, 0);
    grid.emit(mesh.nodes, mesh.elements);

    std::array<int, 2> disk_center{-1, -1};
    if (resonators) {
        mesh.region_names.push_back("disk1");
        mesh.region_names.push_back("disk2");
        for (int i = 0; i < 2; ++i) {
            const double r = spec.deck.disk_radii[i];
            const int segments = std::max(64, static_cast<int>(std::lround(64 * res.scale)));
            const double arc = 2.0 * kPi * r / segments;
            const int rings =
                std::max(2, static_cast<int>(std::ceil(r / std::max(arc, h_target))));
            disk_center[i] = emit_disk(mesh.nodes, mesh.elements, st[i],
                                       -spec.deck.mount_depths[i], r, segments, rings, 1 + i);
        }
    }

    const double tol = 1e-9 * d;
    collect_boundary(mesh, [&](double mx, double my) {
        if (std::abs(mx - 0.0) <= tol) return BoundaryTag::PeriodicMaster;
        if (std::abs(mx - d) <= tol) return BoundaryTag::PeriodicSlave;
        if (std::abs(my + s / 2.0) <= tol &&
            (mx < patch / 2.0 + tol || mx > d - patch / 2.0 - tol))
            return BoundaryTag::Dirichlet;
        return BoundaryTag::TractionFree;
    });
    promote_to_quadratic(mesh);

    if (resonators) {
        for (const auto& a : attachments) {
            const int deck_node = mesh.find_node(a.x, -s / 2.0, tol);
            if (deck_node < 0)
                throw MeshError("build_deck_cell: no deck node at attachment x = " +
                                std::to_string(a.x));
            add_link(mesh, disk_center[a.disk], deck_node, spec.deck.link_stiffness,
                     spec.deck.link_density, spec.deck.link_width);
        }
        add_link(mesh, disk_center[0], disk_center[1], spec.deck.link_stiffness_horizontal,
                 spec.deck.link_density, spec.deck.link_width);
    }

    mesh.validate();
    return mesh;
}

TaggedMesh build_frame_cell(const CellSpec& spec, const Resolution& res) {
    spec.validate();
    if (spec.is_deck())
        throw ConfigError("build_frame_cell: spec is not a frame variant");
    if (!(res.scale > 0.0)) throw ConfigError("resolution scale must be positive");

    const double d = spec.period;
    const double s = spec.frame.wall_thickness;
    const double h_target = s / (4.0 * res.scale);
    const bool resonator = spec.variant == GeometryVariant::FrameCellWithResonator;

    std::vector<double> required_x = {s, d - s};
    std::vector<double> required_y = {s, d - s};
    std::vector<double> lig_centers;
    double lig_len = 0.0, lig_w = 0.0, blk_w = 0.0, blk_h = 0.0;
    double lig_y0 = 0.0, lig_y1 = 0.0, blk_y0 = 0.0;
    if (resonator) {
        lig_len = spec.frame.ligament_size[0];
        lig_w = spec.frame.ligament_size[1];
        blk_w = spec.frame.block_size[0];
        blk_h = spec.frame.block_size[1];
        const int n_lig = spec.frame.ligament_count;
        const double span =
            spec.frame.ligament_span < 0.0 ? blk_w / 3.0 : spec.frame.ligament_span;
        const double cx = d / 2.0;
        if (n_lig == 1) {
            lig_centers.push_back(cx);
        } else {
            for (int i = 0; i < n_lig; ++i)
                lig_centers.push_back(cx - span / 2.0 + span * i / (n_lig - 1));
        }
        // Block hangs from the top wall on the ligaments.
        lig_y1 = d - s;
        lig_y0 = lig_y1 - lig_len;
        blk_y0 = lig_y0 - blk_h;
        for (double c : lig_centers) {
            required_x.push_back(c - lig_w / 2.0);
            required_x.push_back(c);
            required_x.push_back(c + lig_w / 2.0);
        }
        required_x.push_back(cx - blk_w / 2.0);
        required_x.push_back(cx + blk_w / 2.0);
        required_y.push_back(lig_y0);
        required_y.push_back(blk_y0);
        // Refine along the ligament length; target edge ~ width / 2.
        const double lig_h = lig_w / (2.0 * res.scale);
        const int m = std::max(2, static_cast<int>(std::ceil(lig_len / lig_h)));
        for (int i = 1; i < m; ++i) required_y.push_back(lig_y0 + lig_len * i / m);
    }

    TaggedMesh mesh;
    mesh.period = d;
    mesh.axis = 1;
    mesh.region_names = {"frame"};

    GridMesher grid(make_lines(0.0, d, h_target, required_x),
                    make_lines(0.0, d, h_target, required_y));
    grid.fill_rect(-1.0, d + 1.0, -1.0, s, 0);
    grid.fill_rect(-1.0, d + 1.0, d - s, d + 1.0, 0);
    grid.fill_rect(-1.0, s, s, d - s, 0);
    grid.fill_rect(d - s, d + 1.0, s, d - s, 0);
    if (resonator) {
        mesh.region_names.push_back("block");
        mesh.region_names.push_back("ligament");
        grid.fill_rect(d / 2.0 - blk_w / 2.0, d / 2.0 + blk_w / 2.0, blk_y0, lig_y0, 1);
        for (double c : lig_centers)
            grid.fill_rect(c - lig_w / 2.0, c + lig_w / 2.0, lig_y0, lig_y1, 2);
    }
    grid.emit(mesh.nodes, mesh.elements);

    const double tol = 1e-9 * d;
    collect_boundary(mesh, [&](double, double my) {
        if (std::abs(my - 0.0) <= tol) return BoundaryTag::PeriodicMaster;
        if (std::abs(my - d) <= tol) return BoundaryTag::PeriodicSlave;
        return BoundaryTag::TractionFree;
    });
    promote_to_quadratic(mesh);
    mesh.validate();
    return mesh;
}

TaggedMesh build_cell(const CellSpec& spec, const Resolution& res) {
    return spec.is_deck() ? build_deck_cell(spec, res) : build_frame_cell(spec, res);
}

nlohmann::json geometry_report(const CellSpec& spec, const TaggedMesh& mesh) {
    nlohmann::json j;
    j["variant"] = to_string(spec.variant);
    j["period"] = spec.period;
    j["axis"] = spec.axis == 0 ? "x" : "y";
    j["shear_speed"] = spec.shear_speed();
    nlohmann::json mats;
    for (const auto& [name, m] : spec.materials) {
        mats[name] = {{"mu", m.mu}, {"lambda", m.lambda}, {"rho", m.rho},
                      {"nu", m.poisson()}};
    }
    j["materials"] = mats;

    if (spec.is_deck()) {
        j["deck_thickness"] = spec.deck.thickness;
        j["support_patch_width"] = spec.deck.patch_width(spec.period);
        if (spec.variant == GeometryVariant::DeckWithResonators) {
            const auto st = spec.deck.stations(spec.period);
            nlohmann::json disks = nlohmann::json::array();
            for (int i = 0; i < 2; ++i)
                disks.push_back({{"center", {st[i], -spec.deck.mount_depths[i]}},
                                 {"radius", spec.deck.disk_radii[i]}});
            j["disks"] = disks;
            j["link_angle_from_vertical"] = spec.deck.link_angle;
        }
    } else {
        j["wall_thickness"] = spec.frame.wall_thickness;
        if (spec.variant == GeometryVariant::FrameCellWithResonator) {
            j["block_size"] = spec.frame.block_size;
            j["ligament_size"] = spec.frame.ligament_size;
            j["ligament_count"] = spec.frame.ligament_count;
        }
    }

    nlohmann::json links = nlohmann::json::array();
    for (std::size_t l = 0; l < mesh.links.size(); ++l) {
        const auto& link = mesh.links[l];
        const double len = mesh.link_length(static_cast<int>(l));
        links.push_back({{"from", {mesh.nodes[link.n0][0], mesh.nodes[link.n0][1]}},
                         {"to", {mesh.nodes[link.n1][0], mesh.nodes[link.n1][1]}},
                         {"length", len},
                         {"spring_constant", link.stiffness / len},
                         {"density", link.density},
                         {"width", link.width}});
    }
    j["links"] = links;

    j["mesh"] = {{"nodes", mesh.node_count()},
                 {"elements", mesh.elements.size()},
                 {"dofs", mesh.dof_count()},
                 {"total_mass", mesh.total_mass(spec.materials)}};
    return j;
}

} // namespace blochband
