#pragma once

#include "netcap/architecture.hpp"
#include "netcap/quadrature.hpp"

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace netcap {

// Uniform draws from the admissible parameter box [-radius, radius]^n.
std::vector<ParamAssignment> random_parameters(const Architecture& arch, int count,
                                               std::uint64_t seed);

// Product grid with points_per_param equispaced values per free slot,
// enumerated in odometer order. Guarded against more than ~4e6 members.
std::vector<ParamAssignment> parameter_grid(const Architecture& arch,
                                            int points_per_param);

// Checks random parameter draws against the per-layer uniform L1 bound.
struct UniformBoundReport {
    int draws = 0;
    std::uint64_t seed = 0;
    int violations = 0;
    double max_utilization = 0.0;    // observed norm / bound, worst case
    double max_est_tolerance = 0.0;  // quadrature refinement gap
    bool pass = false;
};

UniformBoundReport uniform_bound_check(const Architecture& arch, int draws,
                                       std::uint64_t seed = 0);

// Named self-check suite, shared by the command line and the tests.
struct SuiteResult {
    std::string name;
    bool pass = false;
    nlohmann::json details;
};

std::vector<std::string> available_suites();

// Runs one suite. Suites that exercise a network accept an optional
// architecture and otherwise use a small built-in fixture. Unknown names
// raise ValidationError.
SuiteResult run_suite(const std::string& name,
                      const std::optional<Architecture>& arch = std::nullopt,
                      std::uint64_t seed = 0);

} // namespace netcap
