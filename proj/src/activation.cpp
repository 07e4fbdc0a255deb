#include "netcap/activation.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "netcap/errors.hpp"

namespace netcap {

bool ActivationSpec::sigmoidal() const {
    return rule == "logistic" || rule == "tanh-sigmoid" ||
           rule == "arctan-sigmoid" || rule == "gompertz";
}

ActivationSpec logistic_activation() {
    ActivationSpec a;
    a.rule = "logistic";
    a.lipschitz_c1 = 0.25; // sup |s'| = 1/4 at t = 0
    a.growth_c = 1.0;
    a.fn = [](double t) {
        // Evaluate from the bounded side so exp never overflows.
        if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
        double e = std::exp(t);
        return e / (1.0 + e);
    };
    return a;
}

ActivationSpec relu_activation() {
    ActivationSpec a;
    a.rule = "relu";
    a.lipschitz_c1 = 1.0;
    a.growth_c = 1.0;
    a.fn = [](double t) { return t > 0.0 ? t : 0.0; };
    return a;
}

ActivationSpec gaussian_activation() {
    ActivationSpec a;
    a.rule = "gaussian";
    a.lipschitz_c1 = 1.0; // true constant is sqrt(2)*exp(-1/2) ~ 0.858
    a.growth_c = 1.0;
    a.fn = [](double t) { return std::exp(-t * t); };
    return a;
}

ActivationSpec tanh_sigmoid_activation() {
    ActivationSpec a;
    a.rule = "tanh-sigmoid";
    a.lipschitz_c1 = 1.0; // true constant is 1/2
    a.growth_c = 1.0;
    a.fn = [](double t) { return 0.5 * (std::tanh(t) + 1.0); };
    return a;
}

ActivationSpec arctan_sigmoid_activation() {
    ActivationSpec a;
    a.rule = "arctan-sigmoid";
    a.lipschitz_c1 = 1.0; // true constant is 1/pi
    a.growth_c = 1.0;
    a.fn = [](double t) { return std::atan(t) / 3.14159265358979323846 + 0.5; };
    return a;
}

ActivationSpec gompertz_activation(double a_par, double b_par) {
    if (!(a_par > 0.0) || !(b_par > 0.0))
        throw ValidationError("gompertz activation requires a > 0 and b > 0");
    ActivationSpec a;
    a.rule = "gompertz";
    // Lipschitz constant of exp(-a*exp(-b*t)) is b/e regardless of a;
    // keep the conservative floor of 1 used by the other built-ins.
    a.lipschitz_c1 = std::max(1.0, b_par / std::exp(1.0));
    a.growth_c = 1.0;
    a.params = {a_par, b_par};
    a.fn = [a_par, b_par](double t) { return std::exp(-a_par * std::exp(-b_par * t)); };
    return a;
}

ActivationSpec custom_table_activation(const std::vector<double>& knots_t,
                                       const std::vector<double>& knots_v,
                                       double lipschitz_c1, double growth_c) {
    if (knots_t.size() < 2 || knots_t.size() != knots_v.size())
        throw ValidationError("custom-table activation needs >= 2 knots with matching values");
    for (std::size_t i = 1; i < knots_t.size(); ++i)
        if (!(knots_t[i] > knots_t[i - 1]))
            throw ValidationError("custom-table knots must be strictly increasing");
    if (!(lipschitz_c1 > 0.0) || !(growth_c >= 1.0))
        throw ValidationError("custom-table constants must satisfy c1 > 0 and c >= 1");

    ActivationSpec a;
    a.rule = "custom-table";
    a.lipschitz_c1 = lipschitz_c1;
    a.growth_c = growth_c;
    a.params.reserve(2 * knots_t.size());
    a.params.insert(a.params.end(), knots_t.begin(), knots_t.end());
    a.params.insert(a.params.end(), knots_v.begin(), knots_v.end());
    a.fn = [ts = knots_t, vs = knots_v](double t) {
        if (t <= ts.front()) return vs.front();
        if (t >= ts.back()) return vs.back();
        auto it = std::upper_bound(ts.begin(), ts.end(), t);
        std::size_t hi = static_cast<std::size_t>(it - ts.begin());
        std::size_t lo = hi - 1;
        double w = (t - ts[lo]) / (ts[hi] - ts[lo]);
        return vs[lo] + w * (vs[hi] - vs[lo]);
    };
    return a;
}

ActivationSpec activation_by_name(const std::string& rule) {
    if (rule == "logistic") return logistic_activation();
    if (rule == "relu") return relu_activation();
    if (rule == "gaussian") return gaussian_activation();
    if (rule == "tanh-sigmoid") return tanh_sigmoid_activation();
    if (rule == "arctan-sigmoid") return arctan_sigmoid_activation();
    if (rule == "gompertz") return gompertz_activation();
    throw ValidationError("unknown activation rule: " + rule);
}

ActivationCertificate certify_activation(const ActivationSpec& act, int n_pairs,
                                         double range, std::uint64_t seed) {
    if (n_pairs <= 0 || !(range > 0.0))
        throw DomainError("certify_activation needs n_pairs > 0 and range > 0");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-range, range);

    ActivationCertificate cert;
    for (int i = 0; i < n_pairs; ++i) {
        double t = unif(rng);
        double u = unif(rng);
        // Also probe short distances where a smooth activation is steepest.
        if (i % 4 == 0) u = t + (unif(rng) / range) * 1e-3;
        double st = act(t);
        double su = act(u);
        if (t != u) {
            double ratio = std::abs(st - su) / std::abs(t - u);
            cert.max_lipschitz_ratio = std::max(cert.max_lipschitz_ratio, ratio);
        }
        cert.max_growth_ratio =
            std::max(cert.max_growth_ratio, std::abs(st) / (std::abs(t) + 1.0));
        cert.max_growth_ratio =
            std::max(cert.max_growth_ratio, std::abs(su) / (std::abs(u) + 1.0));
    }
    cert.pass = cert.max_lipschitz_ratio <= act.lipschitz_c1 &&
                cert.max_growth_ratio <= act.growth_c;
    return cert;
}

} // namespace netcap
