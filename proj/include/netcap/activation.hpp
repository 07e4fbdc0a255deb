#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace netcap {

// A scalar activation together with the two constants used by every capacity
// bound in this library:
//   |s(t) - s(u)| <= lipschitz_c1 * |t - u|      (Lipschitz)
//   |s(t)|        <= growth_c * (|t| + 1)        (linear growth, growth_c >= 1)
// The declared constants are valid upper constants, not necessarily tight.
struct ActivationSpec {
    std::string rule;   // "logistic", "relu", "gaussian", "tanh-sigmoid",
                        // "arctan-sigmoid", "gompertz", "custom-table"
    double lipschitz_c1 = 1.0;
    double growth_c = 1.0;
    std::function<double(double)> fn;

    // Extra parameters needed to reconstruct the activation (gompertz a/b,
    // custom table knots). Empty for the parameter-free rules.
    std::vector<double> params;

    double operator()(double t) const { return fn(t); }

    // True for rules with limits 0 at -inf and 1 at +inf.
    bool sigmoidal() const;
};

ActivationSpec logistic_activation();
ActivationSpec relu_activation();
ActivationSpec gaussian_activation();
ActivationSpec tanh_sigmoid_activation();
ActivationSpec arctan_sigmoid_activation();
ActivationSpec gompertz_activation(double a = 1.0, double b = 1.0);

// Piecewise-linear interpolation through (t, value) knots, constant
// extrapolation beyond the ends. Knots must be strictly increasing in t.
// The caller declares the constants; certify_activation can audit them.
ActivationSpec custom_table_activation(const std::vector<double>& knots_t,
                                       const std::vector<double>& knots_v,
                                       double lipschitz_c1, double growth_c);

// Lookup by rule name for the parameter-free built-ins plus "gompertz"
// (with default parameters). Throws ValidationError for unknown names.
ActivationSpec activation_by_name(const std::string& rule);

// Sampled audit of the declared constants on [-range, range].
struct ActivationCertificate {
    double max_lipschitz_ratio = 0.0; // sup |s(t)-s(u)| / |t-u| over sampled pairs
    double max_growth_ratio = 0.0;    // sup |s(t)| / (|t|+1) over sampled points
    bool pass = false;                // both ratios within declared constants
};

ActivationCertificate certify_activation(const ActivationSpec& act,
                                         int n_pairs = 10000,
                                         double range = 1000.0,
                                         std::uint64_t seed = 0);

} // namespace netcap
