#pragma once

#include <optional>
#include <vector>

#include "blochband/cell_spec.hpp"
#include "blochband/mesh_builder.hpp"
#include "blochband/modes.hpp"

namespace blochband {

struct SweepParams {
    int n_k = 48;
    int n_bands = 8;
    Resolution resolution;
    int threads = 0; // 0 selects hardware concurrency
};

// Band structure over the irreducible Brillouin zone k d in [0, pi]. Bands
// are index-sorted (ascending per k); normalized frequency F = f d / v with v
// the host shear speed.
struct DispersionDiagram {
    std::vector<double> kd; // ascending in [0, pi]
    std::vector<std::vector<double>> bands_hz; // [band][ik]
    double v = 0.0; // host shear speed [m/s]
    double d = 0.0; // period [m]

    int n_bands() const { return static_cast<int>(bands_hz.size()); }
    int n_k() const { return static_cast<int>(kd.size()); }
    double normalized(int band, int ik) const { return bands_hz[band][ik] * d / v; }
};

struct BandGap {
    double lo = 0.0; // normalized frequency bounds
    double hi = 0.0;
    double width() const { return hi - lo; }
    double center() const { return 0.5 * (lo + hi); }
};

struct FlatBand {
    int band = 0;
    double max_slope = 0.0; // max |dF / d(kd)|
    double mean_norm = 0.0; // mean F
};

DispersionDiagram sweep(const CellSpec& spec, const SweepParams& params);

// Maximal open intervals below f_max (normalized) containing no band sample,
// each wider than the resolution floor; ascending.
std::vector<BandGap> find_gaps(const DispersionDiagram& diagram, double f_max,
                               double floor = 1e-4);

std::vector<FlatBand> find_flat_bands(const DispersionDiagram& diagram,
                                      double threshold = 1e-2);

// Eigenmodes of a finite stack of n_cells cells on a fixed foundation, with
// wall-to-resonator localization ratios when the cell has resonator regions.
struct FiniteStackResult {
    ModeSet modes;
    std::vector<double> localization; // empty for plain cells
    int n_cells = 0;
    double v = 0.0;
    double d = 0.0;
};

FiniteStackResult finite_stack_modes(const CellSpec& spec, int n_cells, int n_modes,
                                     const Resolution& res = {},
                                     std::optional<double> sigma_hz = std::nullopt);

} // namespace blochband
