#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "blochband/cell_spec.hpp"
#include "blochband/dispersion.hpp"

namespace blochband {

// Top-level run configuration, schema-validated before any computation.
struct RunConfig {
    CellSpec cell;
    int n_k = 48;
    int n_bands = 8;
    double f_max = 0.5; // normalized ceiling for gap detection
    double resolution = 1.0;
    std::string out_dir = "out";
    std::vector<std::string> formats = {"csv", "json"};
    unsigned seed = 0;

    static RunConfig from_json(const nlohmann::json& j);
    static RunConfig load(const std::string& path);
    nlohmann::json to_json() const;

    bool wants(const std::string& format) const {
        for (const auto& f : formats)
            if (f == format) return true;
        return false;
    }
};

} // namespace blochband
