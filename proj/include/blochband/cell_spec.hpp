#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "blochband/material.hpp"

namespace blochband {

enum class GeometryVariant { DeckPlain, DeckWithResonators, FrameCell, FrameCellWithResonator };

std::string to_string(GeometryVariant v);
GeometryVariant variant_from_string(const std::string& s);

// Bridge-deck cell: a slender rectangle of one span length, pinned to the
// pillars over a patch at each end. The resonator variant hangs two disks
// below the deck on longitudinal links.
struct DeckGeometry {
    double thickness = 0.0;            // s [m]
    double support_patch_width = -1.0; // Dirichlet patch per pillar; < 0 selects thickness

    std::array<double, 2> disk_radii{0.0, 0.0};
    std::array<double, 2> mount_depths{0.0, 0.0};   // disk center depth below deck midline
    std::array<double, 2> disk_stations{-1.0, -1.0}; // x of disk centers; < 0 selects 0.3 d / 0.7 d
    double link_angle = 0.0;            // diagonal inclination from the vertical [rad]
    double link_stiffness = 0.0;        // gamma [Pa]
    double link_stiffness_horizontal = 0.0; // gamma1 [Pa]
    double link_density = 0.0;          // rho_gamma [kg/m^3]
    double link_width = 0.02;           // cross-section proxy [m]

    double patch_width(double /*period*/) const {
        return support_patch_width < 0.0 ? thickness : support_patch_width;
    }
    std::array<double, 2> stations(double period) const {
        std::array<double, 2> s = disk_stations;
        if (s[0] < 0.0) s[0] = 0.3 * period;
        if (s[1] < 0.0) s[1] = 0.7 * period;
        return s;
    }
};

// Skyscraper storey cell: a square ring with an optional block resonator
// suspended on parallel thin ligaments from the top wall.
struct FrameGeometry {
    double wall_thickness = 0.0;             // s [m]
    std::array<double, 2> block_size{0.0, 0.0};    // width x height [m]
    std::array<double, 2> ligament_size{0.0, 0.0}; // length x width [m]
    int ligament_count = 3;
    double ligament_span = -1.0; // center distance outermost-to-outermost; < 0 selects block width / 3
};

struct CellSpec {
    double period = 0.0; // d [m]
    int axis = 0;        // periodicity direction: 0 = x (bridge), 1 = y (skyscraper)
    GeometryVariant variant = GeometryVariant::DeckPlain;
    DeckGeometry deck;
    FrameGeometry frame;
    std::map<std::string, Material> materials;

    bool is_deck() const {
        return variant == GeometryVariant::DeckPlain ||
               variant == GeometryVariant::DeckWithResonators;
    }
    bool has_resonator() const {
        return variant == GeometryVariant::DeckWithResonators ||
               variant == GeometryVariant::FrameCellWithResonator;
    }

    const Material& material(const std::string& region) const;
    // Host structure material ("deck" or "frame"), used for normalization.
    const Material& host_material() const { return material(is_deck() ? "deck" : "frame"); }
    double shear_speed() const { return host_material().shear_wave_speed(); }

    void validate() const;

    static CellSpec from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

// Region names a variant requires materials for.
std::vector<std::string> required_regions(GeometryVariant v);

} // namespace blochband
