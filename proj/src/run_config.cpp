#include "blochband/run_config.hpp"

#include <fstream>

#include "blochband/json_util.hpp"
#include "blochband/report.hpp"

namespace blochband {

RunConfig RunConfig::from_json(const nlohmann::json& j) {
    reject_unknown_keys(j, "", {"schema_version", "cell", "sweep", "resolution", "outputs",
                                "seed"});
    const int version = get_int(j, "schema_version", "");
    if (version != kSchemaVersion)
        throw ConfigError("/schema_version: expected " + std::to_string(kSchemaVersion) +
                          ", got " + std::to_string(version));

    RunConfig cfg;
    cfg.cell = CellSpec::from_json(require_key(j, "cell", ""));

    if (j.contains("sweep")) {
        const nlohmann::json& s = j.at("sweep");
        reject_unknown_keys(s, "/sweep", {"n_k", "n_bands", "f_max"});
        cfg.n_k = get_int_or(s, "n_k", "/sweep", cfg.n_k);
        cfg.n_bands = get_int_or(s, "n_bands", "/sweep", cfg.n_bands);
        cfg.f_max = get_number_or(s, "f_max", "/sweep", cfg.f_max);
    }
    cfg.resolution = get_number_or(j, "resolution", "", 1.0);

    if (j.contains("outputs")) {
        const nlohmann::json& o = j.at("outputs");
        reject_unknown_keys(o, "/outputs", {"directory", "formats"});
        if (o.contains("directory")) cfg.out_dir = get_string(o, "directory", "/outputs");
        if (o.contains("formats")) {
            const nlohmann::json& f = o.at("formats");
            if (!f.is_array()) throw ConfigError("/outputs/formats: expected an array");
            cfg.formats.clear();
            for (const auto& item : f) {
                if (!item.is_string())
                    throw ConfigError("/outputs/formats: expected strings");
                const std::string fmt = item.get<std::string>();
                if (fmt != "csv" && fmt != "json" && fmt != "svg")
                    throw ConfigError("/outputs/formats: unknown format '" + fmt + "'");
                cfg.formats.push_back(fmt);
            }
        }
    }
    if (j.contains("seed")) {
        const int s = get_int(j, "seed", "");
        if (s < 0) throw ConfigError("/seed: must be nonnegative");
        cfg.seed = static_cast<unsigned>(s);
    }

    if (cfg.n_k < 2) throw ConfigError("/sweep/n_k: must be >= 2");
    if (cfg.n_bands < 1) throw ConfigError("/sweep/n_bands: must be >= 1");
    if (!(cfg.f_max > 0.0)) throw ConfigError("/sweep/f_max: must be positive");
    if (!(cfg.resolution > 0.0)) throw ConfigError("/resolution: must be positive");
    return cfg;
}

RunConfig RunConfig::load(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file: " + path);
    nlohmann::json j;
    try {
        is >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config parse error in " + path + ": " + e.what());
    }
    return from_json(j);
}

nlohmann::json RunConfig::to_json() const {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["cell"] = cell.to_json();
    j["sweep"] = {{"n_k", n_k}, {"n_bands", n_bands}, {"f_max", f_max}};
    j["resolution"] = resolution;
    j["outputs"] = {{"directory", out_dir}, {"formats", formats}};
    j["seed"] = seed;
    return j;
}

} // namespace blochband
