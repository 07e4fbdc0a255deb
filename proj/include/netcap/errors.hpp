#pragma once

#include <stdexcept>
#include <string>

namespace netcap {

// Structural problems in a model description: dimension mismatches,
// free-index gaps, fixed entries outside the radius, malformed JSON.
struct ValidationError : std::invalid_argument {
    explicit ValidationError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Numeric arguments outside the documented domain: evaluation points
// outside the cube, parameters beyond the radius, nonpositive epsilon.
struct DomainError : std::domain_error {
    explicit DomainError(const std::string& msg) : std::domain_error(msg) {}
};

// An enumeration guard tripped (too many parameters, too many candidates,
// per-parameter grid too fine). The request is well-formed but too large
// for exact processing.
struct GuardError : std::length_error {
    explicit GuardError(const std::string& msg) : std::length_error(msg) {}
};

// A randomized or greedy construction could not reach its certified target,
// or a requested object does not exist for the given inputs.
struct ConstructionError : std::runtime_error {
    explicit ConstructionError(const std::string& msg) : std::runtime_error(msg) {}
};

// The operation is defined only for a subset of inputs (e.g. sigmoidal
// activations) and was called outside it.
struct UnsupportedError : std::invalid_argument {
    explicit UnsupportedError(const std::string& msg) : std::invalid_argument(msg) {}
};

} // namespace netcap
