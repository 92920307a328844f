#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "blochband/dispersion.hpp"

namespace blochband {

inline constexpr const char* kSoftwareVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

// 17 significant digits: doubles round-trip exactly, so reruns are
// byte-identical.
std::string format_double(double v);

// Writes via a temporary file in the same directory plus rename.
void atomic_write(const std::filesystem::path& path, const std::string& content);

// FNV-1a 64-bit over the canonical (sorted-key) JSON dump.
std::string config_hash(const nlohmann::json& config);

std::string bands_csv(const DispersionDiagram& diagram);
DispersionDiagram bands_from_csv(const std::string& content);

nlohmann::json gaps_to_json(const std::vector<BandGap>& gaps, double f_max);
nlohmann::json flat_bands_to_json(const std::vector<FlatBand>& flats, double threshold);

// Band diagram (F vs kd) with shaded gaps; no timestamps.
std::string bands_svg(const DispersionDiagram& diagram, const std::vector<BandGap>& gaps);

nlohmann::json make_manifest(const std::string& command, const nlohmann::json& config,
                             const std::vector<std::string>& outputs);

} // namespace blochband
