#include "blochband/modes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <set>

namespace blochband {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

const std::vector<std::string> kHostRegions = {"deck", "frame"};
const std::vector<std::string> kResonatorRegions = {"disk1", "disk2", "block", "ligament"};

std::vector<int> collect_region_nodes(const TaggedMesh& mesh,
                                      const std::vector<std::string>& names) {
    std::set<int> found;
    for (const auto& name : names) {
        bool present = false;
        for (const auto& r : mesh.region_names)
            if (r == name) present = true;
        if (!present) continue;
        for (int n : mesh.region_nodes(name)) found.insert(n);
    }
    return {found.begin(), found.end()};
}

} // namespace

ModeSet solve_modes(const BlochSystem& system, int n_modes, std::optional<double> sigma_hz,
                    SpectralRequest::Path path) {
    if (n_modes < 1) throw ConfigError("solve_modes: n_modes must be >= 1");
    if (n_modes >= system.n_reduced)
        throw ConfigError("solve_modes: n_modes must be below the reduced dimension " +
                          std::to_string(system.n_reduced));

    SpectralRequest req;
    req.n_pairs = n_modes;
    req.tolerance = 1e-9;
    req.path = path;
    if (sigma_hz) {
        const double omega = 2.0 * kPi * *sigma_hz;
        req.shift = omega * omega;
    }
    const SpectralResult res = smallest_pairs(system.K, system.M, req);

    ModeSet out;
    out.k = system.k;
    out.frequencies_hz.resize(n_modes);
    out.residuals = res.residuals;
    for (int i = 0; i < n_modes; ++i) {
        if (res.residuals(i) > 1e-8)
            throw SolverError("solve_modes: residual " + std::to_string(res.residuals(i)) +
                              " fails the 1e-8 certificate for mode " + std::to_string(i));
        out.frequencies_hz[i] = std::sqrt(std::max(res.values(i), 0.0)) / (2.0 * kPi);
    }
    out.shapes = system.T * res.vectors;
    return out;
}

bool has_resonator_regions(const TaggedMesh& mesh) {
    for (const auto& r : mesh.region_names)
        for (const auto& name : kResonatorRegions)
            if (r == name) return true;
    return false;
}

std::vector<double> localization_ratios(const TaggedMesh& mesh, const ModeSet& modes) {
    if (!has_resonator_regions(mesh))
        throw ConfigError("localization_ratios: the mesh has no resonator regions");
    const std::vector<int> host = collect_region_nodes(mesh, kHostRegions);
    const std::vector<int> reso = collect_region_nodes(mesh, kResonatorRegions);
    if (host.empty() || reso.empty())
        throw ConfigError("localization_ratios: empty host or resonator node set");

    const int n_modes = static_cast<int>(modes.frequencies_hz.size());
    std::vector<double> ratios(n_modes);
    for (int m = 0; m < n_modes; ++m) {
        auto mean_mag = [&](const std::vector<int>& nodes) {
            double sum = 0.0;
            for (int n : nodes)
                sum += std::hypot(std::abs(modes.shapes(2 * n, m)),
                                  std::abs(modes.shapes(2 * n + 1, m)));
            return sum / static_cast<double>(nodes.size());
        };
        const double reso_mean = mean_mag(reso);
        ratios[m] = reso_mean > 0.0 ? mean_mag(host) / reso_mean
                                    : std::numeric_limits<double>::infinity();
    }
    return ratios;
}

nlohmann::json modes_to_json(const TaggedMesh& mesh, const ModeSet& modes) {
    nlohmann::json j;
    j["k"] = modes.k;
    j["kd"] = modes.k * mesh.period;
    j["frequencies_hz"] = modes.frequencies_hz;
    nlohmann::json shapes = nlohmann::json::array();
    for (std::size_t m = 0; m < modes.frequencies_hz.size(); ++m) {
        nlohmann::json nodes = nlohmann::json::array();
        for (int n = 0; n < mesh.node_count(); ++n) {
            const auto ux = modes.shapes(2 * n, static_cast<int>(m));
            const auto uy = modes.shapes(2 * n + 1, static_cast<int>(m));
            nodes.push_back({{"node", n},
                             {"ux", {ux.real(), ux.imag()}},
                             {"uy", {uy.real(), uy.imag()}}});
        }
        shapes.push_back({{"mode", m}, {"f_hz", modes.frequencies_hz[m]}, {"nodes", nodes}});
    }
    j["shapes"] = shapes;
    return j;
}

void write_mode_point_data(std::ostream& os, const TaggedMesh& mesh, const ModeSet& modes,
                           int mode_index) {
    os << "# x y re_ux im_ux re_uy im_uy |u|\n";
    for (int n = 0; n < mesh.node_count(); ++n) {
        const auto ux = modes.shapes(2 * n, mode_index);
        const auto uy = modes.shapes(2 * n + 1, mode_index);
        const double mag = std::sqrt(std::norm(ux) + std::norm(uy));
        os << mesh.nodes[n][0] << " " << mesh.nodes[n][1] << " " << ux.real() << " "
           << ux.imag() << " " << uy.real() << " " << uy.imag() << " " << mag << "\n";
    }
}

} // namespace blochband
