#pragma once

#include <set>
#include <string>

#include <json.hpp>

#include "blochband/errors.hpp"

namespace blochband {

// Strict-schema helpers: unknown keys are rejected so a typo in a config
// cannot silently fall back to defaults. Paths in messages use JSON-pointer
// style so the offending field is easy to locate.

inline void require_object(const nlohmann::json& j, const std::string& path) {
    if (!j.is_object())
        throw ConfigError(path + ": expected an object");
}

inline void reject_unknown_keys(const nlohmann::json& j, const std::string& path,
                                const std::set<std::string>& allowed) {
    require_object(j, path);
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw ConfigError(path + "/" + it.key() + ": unknown field");
}

inline const nlohmann::json& require_key(const nlohmann::json& j, const std::string& key,
                                         const std::string& path) {
    require_object(j, path);
    auto it = j.find(key);
    if (it == j.end())
        throw ConfigError(path + "/" + key + ": missing required field");
    return *it;
}

inline double get_number(const nlohmann::json& j, const std::string& key,
                         const std::string& path) {
    const nlohmann::json& v = require_key(j, key, path);
    if (!v.is_number())
        throw ConfigError(path + "/" + key + ": expected a number");
    return v.get<double>();
}

inline double get_number_or(const nlohmann::json& j, const std::string& key,
                            const std::string& path, double fallback) {
    if (!j.is_object() || !j.contains(key)) return fallback;
    const nlohmann::json& v = j.at(key);
    if (!v.is_number())
        throw ConfigError(path + "/" + key + ": expected a number");
    return v.get<double>();
}

inline int get_int(const nlohmann::json& j, const std::string& key, const std::string& path) {
    const nlohmann::json& v = require_key(j, key, path);
    if (!v.is_number_integer())
        throw ConfigError(path + "/" + key + ": expected an integer");
    return v.get<int>();
}

inline int get_int_or(const nlohmann::json& j, const std::string& key, const std::string& path,
                      int fallback) {
    if (!j.is_object() || !j.contains(key)) return fallback;
    const nlohmann::json& v = j.at(key);
    if (!v.is_number_integer())
        throw ConfigError(path + "/" + key + ": expected an integer");
    return v.get<int>();
}

inline std::string get_string(const nlohmann::json& j, const std::string& key,
                              const std::string& path) {
    const nlohmann::json& v = require_key(j, key, path);
    if (!v.is_string())
        throw ConfigError(path + "/" + key + ": expected a string");
    return v.get<std::string>();
}

inline std::array<double, 2> get_pair(const nlohmann::json& j, const std::string& key,
                                      const std::string& path) {
    const nlohmann::json& v = require_key(j, key, path);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        throw ConfigError(path + "/" + key + ": expected an array of two numbers");
    return {v[0].get<double>(), v[1].get<double>()};
}

} // namespace blochband
