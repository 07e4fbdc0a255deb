#include "netcap/lower_bounds.hpp"
#include "netcap/errors.hpp"
#include "netcap/hard_family.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace netcap {

namespace {

// x^{-r/d} through the log domain, keeping tiny values well conditioned.
double neg_power(double x, double r, int d) {
    return std::exp2(-(r / static_cast<double>(d)) * std::log2(x));
}

} // namespace

LowerBoundCertificate relation_lower_bound(const RelationInputs& in) {
    if (in.c1_tilde <= 0.0 || in.c2_tilde <= 0.0)
        throw DomainError("relation_lower_bound: covering constants must be positive");
    if (in.beta < 0.0) throw DomainError("relation_lower_bound: beta must be nonnegative");
    if (in.n < 1) throw DomainError("relation_lower_bound: n must be positive");
    if (in.r <= 0.0) throw DomainError("relation_lower_bound: r must be positive");
    if (in.d < 1) throw DomainError("relation_lower_bound: d must be positive");

    LowerBoundCertificate cert;
    cert.kind = "relation";
    cert.relation_inputs = in;
    cert.r = in.r;
    cert.d = in.d;
    cert.n = in.n;
    cert.exponent = -in.r / static_cast<double>(in.d);

    const double droot = std::pow(static_cast<double>(in.d), 0.5 * in.d);
    cert.smoothness_load = 1.0 + in.beta + 3.0 * in.r / static_cast<double>(in.d);
    cert.log2_argument =
        2.0 * in.c1_tilde + 8.0 * droot * (cert.smoothness_load + in.c2_tilde);
    cert.bracket = 32.0 * cert.smoothness_load * (std::log2(cert.log2_argument) + 1.0);
    cert.constant = 0.25 / droot * neg_power(cert.bracket, in.r, in.d);
    cert.complexity = static_cast<double>(in.n) *
                      std::log2(static_cast<double>(in.n) + 1.0);
    cert.value = cert.constant * neg_power(cert.complexity, in.r, in.d);

    cert.n_star = choose_nstar(static_cast<int>(std::min<long long>(
                                   in.n, std::numeric_limits<int>::max())),
                               in.r, in.d, in.beta, in.c1_tilde, in.c2_tilde)
                      .n_star;
    return cert;
}

LowerBoundCertificate deep_net_lower_bound(long long n, int L, double radius,
                                           double d_max, double r, int d,
                                           const ConstantLedger& ledger) {
    if (n < 2)
        throw DomainError("deep_net_lower_bound: n must be at least 2 so log2(n) > 0");
    if (L < 1) throw DomainError("deep_net_lower_bound: depth must be positive");
    if (radius * d_max < 2.0)
        throw DomainError("deep_net_lower_bound: need R * d_max >= 2 so the log factor "
                          "is at least 1");
    if (r <= 0.0) throw DomainError("deep_net_lower_bound: r must be positive");
    if (d < 1) throw DomainError("deep_net_lower_bound: d must be positive");

    LowerBoundCertificate cert;
    cert.kind = "deep-net";
    cert.n = n;
    cert.L = L;
    cert.radius = radius;
    cert.d_max = d_max;
    cert.r = r;
    cert.d = d;
    cert.ledger = ledger;
    cert.exponent = -r / static_cast<double>(d);

    const double droot = std::pow(static_cast<double>(d), 0.5 * d);
    cert.c3 = ledger.c3;
    cert.smoothness_load = 1.0 + 3.0 * r / static_cast<double>(d);
    cert.log2_argument = 48.0 * droot * ledger.c3;
    cert.bracket =
        128.0 * cert.smoothness_load * (std::log2(cert.log2_argument) + 1.0);
    cert.cbar1_prime = 0.5 * neg_power(cert.bracket, r, d);
    cert.constant = neg_power(3.0, r, d) * cert.cbar1_prime;
    cert.complexity = static_cast<double>(L) * static_cast<double>(L) *
                      static_cast<double>(n) * std::log2(static_cast<double>(n)) *
                      std::log2(radius * d_max);
    cert.value = cert.constant * neg_power(cert.complexity, r, d);
    return cert;
}

RateCurve rate_curve(const std::string& id, double r, int d,
                     const RateCurveParams& params) {
    if (r <= 0.0) throw DomainError("rate_curve: r must be positive");
    if (d < 1) throw DomainError("rate_curve: d must be positive");
    const double exponent = -r / static_cast<double>(d);

    RateCurve curve;
    curve.id = id;
    if (id == "shallow-upper") {
        curve.constant_known = false;
        curve.form = "n^{-r/d}";
        curve.value = [exponent](double n) { return std::pow(n, exponent); };
    } else if (id == "relu-deep-upper") {
        curve.constant_known = false;
        curve.form = "n^{-r/d} log n";
        curve.value = [exponent](double n) { return std::pow(n, exponent) * std::log(n); };
    } else if (id == "deep-lower") {
        curve.constant_known = true;
        curve.form = "C [L^2 n log2(n) log2(R d_max)]^{-r/d}";
        const RateCurveParams p = params;
        curve.value = [p, r, d](double n) {
            return deep_net_lower_bound(static_cast<long long>(n), p.L, p.radius,
                                        p.d_max, r, d, p.ledger)
                .value;
        };
    } else if (id == "shallow-covering") {
        curve.constant_known = false;
        curve.form = "log2 N ~ n (per unit log(1/eps))";
        curve.value = [](double n) { return n; };
    } else if (id == "vc-covering") {
        curve.constant_known = false;
        curve.form = "log2 N ~ L n (piecewise-linear activations)";
        const double L = params.L;
        curve.value = [L](double n) { return L * n; };
    } else {
        throw ValidationError("rate_curve: unknown curve id '" + id + "'");
    }
    return curve;
}

GapReport gap_report(double r, int d, int L, std::vector<long long> n_values,
                     const ConstantLedger& ledger, double radius, double d_max) {
    if (n_values.empty()) throw ValidationError("gap_report: n range must be nonempty");
    std::sort(n_values.begin(), n_values.end());
    if (n_values.front() < 2)
        throw DomainError("gap_report: all n must be at least 2");

    GapReport report;
    report.r = r;
    report.d = d;
    report.L = L;
    report.radius = radius;
    report.d_max = d_max;
    report.ledger = ledger;

    RateCurveParams params;
    params.L = L;
    params.radius = radius;
    params.d_max = d_max;
    params.ledger = ledger;

    const RateCurve shallow = rate_curve("shallow-upper", r, d, params);
    const RateCurve relu = rate_curve("relu-deep-upper", r, d, params);
    const RateCurve lower = rate_curve("deep-lower", r, d, params);
    const RateCurve cov_shallow = rate_curve("shallow-covering", r, d, params);
    const RateCurve cov_vc = rate_curve("vc-covering", r, d, params);

    const double n0 = static_cast<double>(n_values.front());
    const double base_shallow = shallow.value(n0);
    const double base_relu = relu.value(n0);
    const double base_lower = lower.value(n0);
    const double base_cov_shallow = cov_shallow.value(n0);
    const double base_cov_vc = cov_vc.value(n0);

    report.rows.reserve(n_values.size());
    for (long long n : n_values) {
        const double nd = static_cast<double>(n);
        GapRow row;
        row.n = n;
        row.shallow_upper = shallow.value(nd) / base_shallow;
        row.relu_deep_upper = relu.value(nd) / base_relu;
        row.deep_lower_value = lower.value(nd);
        row.deep_lower = row.deep_lower_value / base_lower;
        row.shallow_covering = cov_shallow.value(nd) / base_cov_shallow;
        row.vc_covering = cov_vc.value(nd) / base_cov_vc;
        row.ratio = row.shallow_upper / row.deep_lower;
        report.rows.push_back(row);
    }
    return report;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw ValidationError("loglog_slope: need two equally sized samples");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0))
            throw DomainError("loglog_slope: samples must be positive");
        const double lx = std::log2(x[i]);
        const double ly = std::log2(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double m = static_cast<double>(x.size());
    const double denom = m * sxx - sx * sx;
    if (denom == 0.0) throw DomainError("loglog_slope: degenerate abscissae");
    return (m * sxy - sx * sy) / denom;
}

} // namespace netcap
