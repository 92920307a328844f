#pragma once

#include <stdexcept>
#include <string>

namespace blochband {

// Bad user input: malformed JSON, schema violations, invalid parameter ranges.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// A geometry that cannot be meshed: degenerate features, overflow of the cell.
class GeometryError : public std::runtime_error {
public:
    explicit GeometryError(const std::string& msg) : std::runtime_error(msg) {}
};

// Mesh-level integrity failures: non-congruent periodic boundaries, failed merges.
class MeshError : public std::runtime_error {
public:
    explicit MeshError(const std::string& msg) : std::runtime_error(msg) {}
};

// Assembly integrity: non-positive Jacobians, Hermiticity violations.
class AssemblyError : public std::runtime_error {
public:
    explicit AssemblyError(const std::string& msg) : std::runtime_error(msg) {}
};

// Eigensolver failures: non-convergence, indefinite mass matrix.
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

// A tuning request that no parameter value can satisfy. Carries the achievable range.
class InfeasibleTargetError : public std::runtime_error {
public:
    InfeasibleTargetError(const std::string& msg, double lo, double hi)
        : std::runtime_error(msg), achievable_lo(lo), achievable_hi(hi) {}
    double achievable_lo;
    double achievable_hi;
};

} // namespace blochband
