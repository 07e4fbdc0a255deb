// Python bindings for the main library operations. Thin wrappers: plain
// Python structures in and out, no exposed C++ classes.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "netcap/activation.hpp"
#include "netcap/architecture.hpp"
#include "netcap/bump.hpp"
#include "netcap/capacity.hpp"
#include "netcap/hard_family.hpp"
#include "netcap/lower_bounds.hpp"
#include "netcap/sign_code.hpp"

#include "json.hpp"

namespace py = pybind11;

namespace {

py::dict ledger_dict(const netcap::ConstantLedger& lg) {
    py::dict out;
    out["c"] = lg.c;
    out["c1"] = lg.c1;
    out["d"] = lg.d;
    out["c1_prime"] = lg.c1_prime;
    out["c2_prime"] = lg.c2_prime;
    out["c3"] = lg.c3;
    return out;
}

py::dict wrap_constant_ledger(double c, double c1, int d) {
    return ledger_dict(netcap::constant_ledger(c, c1, d));
}

double wrap_activation(const std::string& name, double t) {
    return netcap::activation_by_name(name)(t);
}

py::dict wrap_covering_bound(int n, int L, double radius, double d_max,
                             double d_prod, double c, double c1, int d, double eps) {
    const auto bound = netcap::covering_bound_from_inputs(
        n, L, radius, d_max, d_prod, netcap::constant_ledger(c, c1, d), eps);
    py::dict out;
    out["epsilon"] = bound.epsilon;
    out["log2_tight"] = bound.log2_tight;
    out["log2_relaxed"] = bound.log2_relaxed;
    return out;
}

py::dict wrap_analyze(const std::string& arch_json, double eps) {
    const auto doc = nlohmann::json::parse(arch_json);
    const netcap::Architecture arch = netcap::architecture_from_json(doc);
    const auto bound = netcap::network_covering_bound(arch, eps);
    py::dict out;
    out["free_parameters"] = arch.free_param_count();
    out["distinct_slots"] = arch.param_count();
    out["depth"] = arch.depth();
    out["log2_tight"] = bound.log2_tight;
    out["log2_relaxed"] = bound.log2_relaxed;
    out["ledger"] = ledger_dict(netcap::ledger_for(arch));
    return out;
}

py::dict wrap_gv_code(int m, int target_l1, std::uint64_t seed, std::size_t max_words) {
    const netcap::SignCode code = netcap::gv_code(m, target_l1, seed, max_words);
    py::dict out;
    out["m"] = code.m;
    out["words"] = code.words;
    out["target_l1"] = code.target_l1;
    out["min_l1"] = code.min_l1;
    out["full_cardinality"] = code.full_cardinality;
    return out;
}

py::dict wrap_choose_nstar(int n, double r, int d, double beta, double c1t, double c2t) {
    const netcap::NStarChoice choice = netcap::choose_nstar(n, r, d, beta, c1t, c2t);
    py::dict out;
    out["n_star"] = choice.n_star;
    out["required_cells"] = choice.required_cells;
    out["log2_argument"] = choice.log2_argument;
    return out;
}

double wrap_bump_value(int d, double r, double c0, const std::vector<double>& x) {
    return netcap::make_bump(d, r, c0).value(x);
}

double wrap_bump_l1(int d, double r, double c0) {
    return netcap::make_bump(d, r, c0).l1_norm();
}

py::dict wrap_relation_bound(long long n, double r, int d, double beta, double c1t,
                             double c2t) {
    netcap::RelationInputs in;
    in.n = n;
    in.r = r;
    in.d = d;
    in.beta = beta;
    in.c1_tilde = c1t;
    in.c2_tilde = c2t;
    const auto cert = netcap::relation_lower_bound(in);
    py::dict out;
    out["value"] = cert.value;
    out["constant"] = cert.constant;
    out["exponent"] = cert.exponent;
    out["n_star"] = cert.n_star;
    return out;
}

py::dict wrap_deep_net_bound(long long n, int L, double radius, double d_max, double r,
                             int d, double c, double c1) {
    const auto cert = netcap::deep_net_lower_bound(n, L, radius, d_max, r, d,
                                                   netcap::constant_ledger(c, c1, d));
    py::dict out;
    out["value"] = cert.value;
    out["constant"] = cert.constant;
    out["exponent"] = cert.exponent;
    out["c3"] = cert.c3;
    out["cbar1_prime"] = cert.cbar1_prime;
    return out;
}

long long wrap_dense_param_count(const std::vector<int>& widths) {
    return netcap::dense_param_count(widths);
}

} // namespace

PYBIND11_MODULE(_netcap, m) {
    m.doc() = "capacity analysis for structured feed-forward networks";
    m.attr("__version__") = "0.1.0";

    m.def("constant_ledger", &wrap_constant_ledger, py::arg("c"), py::arg("c1"),
          py::arg("d"), "derived covering constants for activation constants (c, c1)");
    m.def("activation_value", &wrap_activation, py::arg("name"), py::arg("t"),
          "evaluate a built-in activation by name");
    m.def("covering_bound", &wrap_covering_bound, py::arg("n"), py::arg("L"),
          py::arg("radius"), py::arg("d_max"), py::arg("d_prod"), py::arg("c"),
          py::arg("c1"), py::arg("d"), py::arg("eps"),
          "log2 covering bounds from raw network statistics");
    m.def("analyze_architecture", &wrap_analyze, py::arg("arch_json"), py::arg("eps"),
          "parameter counts and covering bounds for an architecture JSON document");
    m.def("gv_code", &wrap_gv_code, py::arg("m"), py::arg("target_l1") = 0,
          py::arg("seed") = 0, py::arg("max_words") = 0,
          "greedy separated sign code over {-1,+1}^m");
    m.def("choose_nstar", &wrap_choose_nstar, py::arg("n"), py::arg("r"), py::arg("d"),
          py::arg("beta") = 0.0, py::arg("c1_tilde") = 1.0, py::arg("c2_tilde") = 10.0,
          "grid resolution for a parameter budget");
    m.def("bump_value", &wrap_bump_value, py::arg("d"), py::arg("r"), py::arg("c0"),
          py::arg("x"), "evaluate the certified bump at a point");
    m.def("bump_l1_norm", &wrap_bump_l1, py::arg("d"), py::arg("r"), py::arg("c0"),
          "closed-form L1 norm of the certified bump");
    m.def("relation_lower_bound", &wrap_relation_bound, py::arg("n"), py::arg("r"),
          py::arg("d"), py::arg("beta") = 0.0, py::arg("c1_tilde") = 1.0,
          py::arg("c2_tilde") = 10.0, "covering-condition lower bound certificate");
    m.def("deep_net_lower_bound", &wrap_deep_net_bound, py::arg("n"), py::arg("L"),
          py::arg("radius"), py::arg("d_max"), py::arg("r"), py::arg("d"),
          py::arg("c") = 1.0, py::arg("c1") = 1.0,
          "structured-net lower bound certificate");
    m.def("dense_param_count", &wrap_dense_param_count, py::arg("widths"),
          "fully-connected parameter count for a width chain");
}
