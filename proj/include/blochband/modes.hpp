#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include <json.hpp>

#include "blochband/bloch.hpp"
#include "blochband/eigensolver.hpp"
#include "blochband/mesh.hpp"

namespace blochband {

// Eigenmodes of one Bloch solve: ascending frequencies with mass-normalized
// complex shapes expanded to the full mesh (Dirichlet DOFs zero, slaves
// carrying the Bloch phase).
struct ModeSet {
    double k = 0.0;
    std::vector<double> frequencies_hz;
    Eigen::MatrixXcd shapes; // dof_count x n_modes
    Eigen::VectorXd residuals;
};

ModeSet solve_modes(const BlochSystem& system, int n_modes,
                    std::optional<double> sigma_hz = std::nullopt,
                    SpectralRequest::Path path = SpectralRequest::Path::Auto);

// Mean displacement magnitude over host-region nodes divided by the mean over
// resonator-region nodes, one value per mode. Requires a resonator variant.
std::vector<double> localization_ratios(const TaggedMesh& mesh, const ModeSet& modes);

bool has_resonator_regions(const TaggedMesh& mesh);

nlohmann::json modes_to_json(const TaggedMesh& mesh, const ModeSet& modes);
void write_mode_point_data(std::ostream& os, const TaggedMesh& mesh, const ModeSet& modes,
                           int mode_index);

} // namespace blochband
