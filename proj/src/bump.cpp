#include "netcap/bump.hpp"
#include "netcap/errors.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace netcap {

namespace {

double binom(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double acc = 1.0;
    for (int i = 1; i <= k; ++i)
        acc = acc * static_cast<double>(n - k + i) / static_cast<double>(i);
    return acc;
}

// Monomial coefficients of the degree-(2p+1) smoothstep
//   S_p(t) = sum_{k=0}^{p} C(p+k,k) C(2p+1,p-k) (-1)^k t^{p+1+k},
// which rises from S_p(0)=0 to S_p(1)=1 with p vanishing derivatives at
// both ends.
std::vector<double> smoothstep_coefficients(int p) {
    std::vector<double> coeff(static_cast<std::size_t>(2 * p + 2), 0.0);
    for (int k = 0; k <= p; ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        coeff[static_cast<std::size_t>(p + 1 + k)] =
            sign * binom(p + k, k) * binom(2 * p + 1, p - k);
    }
    return coeff;
}

double eval_poly(const std::vector<double>& coeff, double t) {
    double acc = 0.0;
    for (std::size_t i = coeff.size(); i-- > 0;) acc = acc * t + coeff[i];
    return acc;
}

std::vector<double> differentiate(std::vector<double> coeff, int times) {
    for (int n = 0; n < times; ++n) {
        if (coeff.size() <= 1) return {0.0};
        std::vector<double> next(coeff.size() - 1);
        for (std::size_t k = 1; k < coeff.size(); ++k)
            next[k - 1] = static_cast<double>(k) * coeff[k];
        coeff = std::move(next);
    }
    return coeff;
}

} // namespace

double BumpSpec::profile(double u) const {
    const double a = std::abs(u);
    if (a <= 0.5) return 1.0;
    if (a >= 1.0) return 0.0;
    return eval_poly(shoulder_coeff, 2.0 * (1.0 - a));
}

double BumpSpec::profile_derivative(double u, int order) const {
    if (order < 0) throw DomainError("profile_derivative: negative order");
    if (order == 0) return profile(u);
    if (order > shoulder_p)
        throw GuardError("profile_derivative: order " + std::to_string(order) +
                         " exceeds the profile smoothness " + std::to_string(shoulder_p));
    const double a = std::abs(u);
    if (a <= 0.5 || a >= 1.0) return 0.0;
    const double t = 2.0 * (1.0 - a);
    const double inner = std::pow(u > 0.0 ? -2.0 : 2.0, order);
    return eval_poly(differentiate(shoulder_coeff, order), t) * inner;
}

double BumpSpec::value(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != d)
        throw ValidationError("bump value: point dimension mismatch");
    const double root_d = std::sqrt(static_cast<double>(d));
    double acc = 1.0;
    for (double xi : x) {
        acc *= profile(root_d * xi);
        if (acc == 0.0) return 0.0;
    }
    return acc;
}

double BumpSpec::partial(std::span<const double> x, std::span<const int> alpha) const {
    if (static_cast<int>(x.size()) != d || alpha.size() != x.size())
        throw ValidationError("bump partial: dimension mismatch");
    const double root_d = std::sqrt(static_cast<double>(d));
    double acc = 1.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        acc *= std::pow(root_d, alpha[j]) * profile_derivative(root_d * x[j], alpha[j]);
        if (acc == 0.0) return 0.0;
    }
    return acc;
}

double BumpSpec::plateau_halfwidth() const {
    return 0.5 / std::sqrt(static_cast<double>(d));
}

double BumpSpec::support_halfwidth() const {
    return 1.0 / std::sqrt(static_cast<double>(d));
}

double BumpSpec::shoulder_integral() const {
    double acc = 0.0;
    for (std::size_t k = 0; k < shoulder_coeff.size(); ++k)
        acc += shoulder_coeff[k] / static_cast<double>(k + 1);
    return acc;
}

double BumpSpec::l1_norm() const {
    const double axis = (1.0 + shoulder_integral()) / std::sqrt(static_cast<double>(d));
    return std::pow(axis, d);
}

FunctionHandle BumpSpec::as_function(std::string label) const {
    BumpSpec copy = *this;
    return FunctionHandle{std::move(label), d,
                          [copy](std::span<const double> x) { return copy.value(x); }};
}

BumpSpec make_bump(int d, double r, double c0) {
    if (d < 1) throw DomainError("make_bump: dimension must be positive");
    if (r <= 0.0) throw DomainError("make_bump: smoothness order must be positive");
    if (c0 <= 0.0) throw DomainError("make_bump: class constant must be positive");

    BumpSpec bump;
    bump.d = d;
    bump.r = r;
    const SmoothnessSplit split = split_smoothness(r);
    bump.s = split.s;
    bump.v = split.v;
    bump.c0 = c0;
    bump.shoulder_p = static_cast<int>(std::ceil(r));
    bump.shoulder_coeff = smoothstep_coefficients(bump.shoulder_p);

    // The bump itself must fit in the halved-constant class so that
    // differences of sign-scaled copies stay within the full constant.
    const double budget = c0 * std::exp2(split.v - 1.0);
    const HolderReport audit =
        holder_check(bump.as_function(), r, budget, 3000, 1e-4, 0, 0.05);
    bump.measured_holder = audit.max_ratio;
    if (!audit.pass) {
        const double minimal = audit.max_ratio * std::exp2(1.0 - split.v);
        throw ConstructionError(
            "make_bump: class constant c0 = " + std::to_string(c0) +
            " is below the bump's measured smoothness requirement; the plateau "
            "height is pinned at 1 and cannot be scaled down. Minimal admissible "
            "c0 at these (d, r): " + std::to_string(minimal));
    }
    return bump;
}

} // namespace netcap
