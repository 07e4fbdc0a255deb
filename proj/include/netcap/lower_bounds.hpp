#pragma once

#include "netcap/capacity.hpp"

#include <functional>
#include <string>
#include <vector>

namespace netcap {

// Inputs of the packing-based lower bound when the approximating class has
// covering numbers bounded by c1_tilde (c2_tilde n^beta / eps)^n.
struct RelationInputs {
    double c1_tilde = 1.0;
    double c2_tilde = 1.0;
    double beta = 0.0;
    long long n = 1;
    double r = 1.0;
    int d = 1;
    double c0 = 1.0; // carried for context; the bound itself does not use it
};

// Evaluated lower bound with the full derivation trail, reproducible
// bit-exactly from the recorded inputs.
struct LowerBoundCertificate {
    std::string kind;          // "relation" or "deep-net"
    double value = 0.0;        // the bound
    double constant = 0.0;     // leading constant (C' or C)
    double exponent = 0.0;     // -r/d
    double complexity = 0.0;   // n log2(n+1), or L^2 n log2(n) log2(R d_max)

    // Derivation trail.
    double smoothness_load = 0.0; // 1 + beta + 3 r / d
    double log2_argument = 0.0;   // argument of the inner log2
    double bracket = 0.0;         // base raised to -r/d inside the constant
    double c3 = 0.0;              // deep-net: ledger constant
    double cbar1_prime = 0.0;     // deep-net: intermediate constant
    long long n_star = 0;         // relation: grid resolution backing the bound

    // Recorded inputs.
    RelationInputs relation_inputs; // kind == "relation"
    long long n = 0;                // kind == "deep-net"
    int L = 0;
    double radius = 0.0;
    double d_max = 0.0;
    double r = 0.0;
    int d = 0;
    ConstantLedger ledger;
};

// C' (n log2(n+1))^{-r/d} with
// C' = (1/4) d^{-d/2} [32 (1+beta+3r/d) (log2(2 c1t + 8 d^{d/2}
//      (1+beta+3r/d+c2t)) + 1)]^{-r/d}.
LowerBoundCertificate relation_lower_bound(const RelationInputs& in);

// C [L^2 n log2(n) log2(R d_max)]^{-r/d} with C = 3^{-r/d} cbar1' and
// cbar1' = (1/2) [128 (1+3r/d) (log2(48 d^{d/2} c3) + 1)]^{-r/d}.
// Requires n >= 2 and R d_max >= 2 so both logs are >= 1.
LowerBoundCertificate deep_net_lower_bound(long long n, int L, double radius,
                                           double d_max, double r, int d,
                                           const ConstantLedger& ledger);

struct RateCurveParams {
    int L = 1;
    double radius = 2.0;
    double d_max = 2.0;
    ConstantLedger ledger = constant_ledger(1.0, 1.0, 1);
};

// A reference approximation- or capacity-rate, evaluable at n. Curves whose
// literature constants are unknown are rate-only: they carry no absolute
// scale and must only be compared by shape.
struct RateCurve {
    std::string id;
    bool constant_known = false;
    std::string form;
    std::function<double(double)> value;
};

// Known ids: shallow-upper (n^{-r/d}), relu-deep-upper (n^{-r/d} log n),
// deep-lower (the certified bound above), shallow-covering (log2-covering
// per unit log(1/eps), linear in n), vc-covering (L n, piecewise-linear
// activations). Unknown ids raise ValidationError.
RateCurve rate_curve(const std::string& id, double r, int d,
                     const RateCurveParams& params = {});

struct GapRow {
    long long n = 0;
    double shallow_upper = 0.0;    // normalized to 1 at the smallest n
    double relu_deep_upper = 0.0;  // normalized
    double deep_lower_value = 0.0; // absolute (constant known)
    double deep_lower = 0.0;       // normalized
    double shallow_covering = 0.0; // normalized
    double vc_covering = 0.0;      // normalized
    double ratio = 0.0;            // shallow_upper / deep_lower, normalized
};

struct GapReport {
    double r = 0.0;
    int d = 0;
    int L = 0;
    double radius = 0.0;
    double d_max = 0.0;
    ConstantLedger ledger;
    std::vector<GapRow> rows;
};

// Tabulates all rate curves over the given n values (sorted ascending), with
// rate-only columns normalized to 1 at the smallest n. The ratio column
// isolates the logarithmic gap between the shallow upper rate and the deep
// lower bound.
GapReport gap_report(double r, int d, int L, std::vector<long long> n_values,
                     const ConstantLedger& ledger, double radius = 2.0,
                     double d_max = 2.0);

// Least-squares slope of log2(y) against log2(x); x and y must be positive
// and of equal length >= 2.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

} // namespace netcap
