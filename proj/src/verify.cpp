#include "netcap/verify.hpp"

#include "netcap/activation.hpp"
#include "netcap/bump.hpp"
#include "netcap/capacity.hpp"
#include "netcap/errors.hpp"
#include "netcap/hard_family.hpp"
#include "netcap/packing.hpp"
#include "netcap/sign_code.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace netcap {

std::vector<ParamAssignment> random_parameters(const Architecture& arch, int count,
                                               std::uint64_t seed) {
    if (count < 1) throw DomainError("random_parameters: count must be positive");
    const int n = arch.param_count();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-arch.radius, arch.radius);
    std::vector<ParamAssignment> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        ParamAssignment p;
        p.values.resize(static_cast<std::size_t>(n));
        for (auto& v : p.values) v = unif(rng);
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<ParamAssignment> parameter_grid(const Architecture& arch,
                                            int points_per_param) {
    if (points_per_param < 1)
        throw DomainError("parameter_grid: need at least one point per slot");
    const int n = arch.param_count();
    double total = 1.0;
    for (int i = 0; i < n; ++i) {
        total *= points_per_param;
        if (total > 4.2e6)
            throw GuardError("parameter_grid: grid would exceed ~4e6 members");
    }

    std::vector<double> axis(static_cast<std::size_t>(points_per_param));
    if (points_per_param == 1) {
        axis[0] = 0.0;
    } else {
        const double R = arch.radius;
        for (int i = 0; i < points_per_param; ++i)
            axis[static_cast<std::size_t>(i)] =
                -R + 2.0 * R * static_cast<double>(i) /
                         static_cast<double>(points_per_param - 1);
    }

    std::vector<ParamAssignment> out;
    out.reserve(static_cast<std::size_t>(total));
    std::vector<int> idx(static_cast<std::size_t>(n), 0);
    while (true) {
        ParamAssignment p;
        p.values.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            p.values[static_cast<std::size_t>(i)] =
                axis[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
        out.push_back(std::move(p));
        int pos = n - 1;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == points_per_param - 1)
            idx[static_cast<std::size_t>(pos--)] = 0;
        if (pos < 0) break;
        ++idx[static_cast<std::size_t>(pos)];
    }
    return out;
}

UniformBoundReport uniform_bound_check(const Architecture& arch, int draws,
                                       std::uint64_t seed) {
    if (draws < 1) throw DomainError("uniform_bound_check: draws must be positive");
    arch.validate();

    UniformBoundReport rep;
    rep.draws = draws;
    rep.seed = seed;
    rep.pass = true;

    const QuadratureGrid grid = QuadratureGrid::make(
        arch.input_dim, default_quad_nodes(arch.input_dim), QuadScheme::GaussLegendreTensor);
    const QuadratureGrid fine = grid.refined();

    std::vector<double> bounds(static_cast<std::size_t>(arch.depth()));
    for (int l = 1; l <= arch.depth(); ++l)
        bounds[static_cast<std::size_t>(l - 1)] = uniform_output_bound(arch, l);

    // One forward pass per node feeds every component's norm at once.
    const auto layer_norms = [&arch](const QuadratureGrid& g,
                                     const ParamAssignment& params) {
        std::vector<std::vector<double>> norms(static_cast<std::size_t>(arch.depth()));
        for (int l = 0; l < arch.depth(); ++l)
            norms[static_cast<std::size_t>(l)].assign(
                static_cast<std::size_t>(arch.layers[static_cast<std::size_t>(l)].d_out),
                0.0);

        const int d = g.dim();
        const auto& nodes = g.axis_nodes();
        const auto& weights = g.axis_weights();
        std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
        std::vector<double> x(static_cast<std::size_t>(d));
        for (;;) {
            double w = 1.0;
            for (int k = 0; k < d; ++k) {
                x[static_cast<std::size_t>(k)] = nodes[idx[static_cast<std::size_t>(k)]];
                w *= weights[idx[static_cast<std::size_t>(k)]];
            }
            const auto hidden = arch.layer_outputs(params, x);
            for (std::size_t l = 0; l < hidden.size(); ++l)
                for (std::size_t j = 0; j < hidden[l].size(); ++j)
                    norms[l][j] += w * std::abs(hidden[l][j]);
            int k = d - 1;
            while (k >= 0 && ++idx[static_cast<std::size_t>(k)] == nodes.size()) {
                idx[static_cast<std::size_t>(k)] = 0;
                --k;
            }
            if (k < 0) break;
        }
        return norms;
    };

    const auto samples = random_parameters(arch, draws, seed);
    for (const auto& params : samples) {
        const auto coarse = layer_norms(grid, params);
        const auto finer = layer_norms(fine, params);
        for (int l = 1; l <= arch.depth(); ++l) {
            const int width = arch.layers[static_cast<std::size_t>(l - 1)].d_out;
            const double bound = bounds[static_cast<std::size_t>(l - 1)];
            for (int j = 0; j < width; ++j) {
                const double coarse_norm =
                    coarse[static_cast<std::size_t>(l - 1)][static_cast<std::size_t>(j)];
                const double fine_norm =
                    finer[static_cast<std::size_t>(l - 1)][static_cast<std::size_t>(j)];
                const double tol = std::abs(fine_norm - coarse_norm);
                rep.max_est_tolerance = std::max(rep.max_est_tolerance, tol);
                rep.max_utilization = std::max(rep.max_utilization, fine_norm / bound);
                if (fine_norm > bound + tol) {
                    ++rep.violations;
                    rep.pass = false;
                }
            }
        }
    }
    return rep;
}

namespace {

Architecture tiny_fixture() {
    // Two hidden layers of width one over a scalar input: five free slots.
    return dense_architecture({1, 1, 1}, logistic_activation(), 1.0);
}

SuiteResult suite_code(std::uint64_t seed) {
    SuiteResult res{"code", true, nlohmann::json::object()};
    for (int m : {4, 8, 16}) {
        const SignCode code = gv_code(m, 0, seed);
        const auto required =
            static_cast<std::size_t>(std::ceil(std::exp2(m / 16.0)));
        const bool ok = code.words.size() >= required &&
                        (code.words.size() < 2 || code.min_l1 >= code.target_l1);
        res.pass = res.pass && ok;
        res.details["m" + std::to_string(m)] = {{"size", code.words.size()},
                                                {"required", required},
                                                {"min_l1", code.min_l1},
                                                {"target_l1", code.target_l1},
                                                {"pass", ok}};
    }
    return res;
}

SuiteResult suite_separation(std::uint64_t seed) {
    const BumpSpec bump = make_bump(1, 1.0, 8.0);
    const HardFamily family = build_family(4, bump, seed);
    const SeparationReport rep = verify_separation(family, 12, 32);
    SuiteResult res{"separation", rep.pass, nlohmann::json::object()};
    res.details = {{"bound", rep.bound},
                   {"min_distance", rep.min_distance},
                   {"max_est_tolerance", rep.max_est_tolerance},
                   {"max_closed_form_reldiff", rep.max_closed_form_reldiff},
                   {"pairs_checked", rep.pairs_checked},
                   {"separation_pass", rep.separation_pass},
                   {"closed_form_pass", rep.closed_form_pass}};
    return res;
}

SuiteResult suite_membership(std::uint64_t seed) {
    const BumpSpec bump = make_bump(1, 1.0, 8.0);
    const HardFamily family = build_family(4, bump, seed);
    const HolderReport rep = verify_class_membership(family, 4, 400, seed);
    SuiteResult res{"membership", rep.pass, nlohmann::json::object()};
    res.details = {{"r", rep.r},
                   {"c0", rep.c0},
                   {"slack", rep.slack},
                   {"max_ratio", rep.max_ratio},
                   {"pairs_checked", rep.pairs_checked}};
    return res;
}

SuiteResult suite_localization(std::uint64_t seed) {
    const BumpSpec bump = make_bump(2, 1.0, 8.0);
    const HardFamily family = build_family(3, bump, seed);
    const LocalizationReport rep = verify_localization(family, 10000, seed);
    SuiteResult res{"localization", rep.pass, nlohmann::json::object()};
    res.details = {{"samples", rep.samples},
                   {"max_overlapping", rep.max_overlapping},
                   {"centers_hit", rep.centers_hit}};
    return res;
}

SuiteResult suite_uniform_bound(const std::optional<Architecture>& arch,
                                std::uint64_t seed) {
    const Architecture a = arch ? *arch : dense_architecture({1, 2, 1},
                                                             logistic_activation(), 1.0);
    const UniformBoundReport rep = uniform_bound_check(a, 100, seed);
    SuiteResult res{"uniform-bound", rep.pass, nlohmann::json::object()};
    res.details = {{"draws", rep.draws},
                   {"violations", rep.violations},
                   {"max_utilization", rep.max_utilization},
                   {"max_est_tolerance", rep.max_est_tolerance}};
    return res;
}

SuiteResult suite_packing_bound(const std::optional<Architecture>& arch,
                                std::uint64_t seed) {
    const Architecture a = arch ? *arch : tiny_fixture();
    const QuadratureGrid grid = QuadratureGrid::make(
        a.input_dim, default_quad_nodes(a.input_dim), QuadScheme::GaussLegendreTensor);
    const auto samples = random_parameters(a, 200, seed);
    SuiteResult res{"packing-bound", true, nlohmann::json::object()};
    for (double eps : {0.5, 0.25}) {
        const PackingReport rep = packing_vs_bound_report(a, eps, samples, grid);
        res.pass = res.pass && !rep.violation;
        res.details["eps_" + std::to_string(eps)] = {
            {"epsilon", rep.epsilon},
            {"samples", rep.sample_count},
            {"packing_count", rep.packing_count},
            {"log2_packing", rep.log2_packing},
            {"log2_tight", rep.log2_tight},
            {"log2_relaxed", rep.log2_relaxed},
            {"violation", rep.violation}};
    }
    return res;
}

} // namespace

std::vector<std::string> available_suites() {
    return {"code", "separation", "membership", "localization", "uniform-bound",
            "packing-bound"};
}

SuiteResult run_suite(const std::string& name, const std::optional<Architecture>& arch,
                      std::uint64_t seed) {
    if (name == "code") return suite_code(seed);
    if (name == "separation") return suite_separation(seed);
    if (name == "membership") return suite_membership(seed);
    if (name == "localization") return suite_localization(seed);
    if (name == "uniform-bound") return suite_uniform_bound(arch, seed);
    if (name == "packing-bound") return suite_packing_bound(arch, seed);
    throw ValidationError("run_suite: unknown suite '" + name + "'");
}

} // namespace netcap
