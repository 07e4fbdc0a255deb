#pragma once

#include "netcap/holder.hpp"
#include "netcap/quadrature.hpp"

#include <span>
#include <vector>

namespace netcap {

// Compactly supported tensor-product bump
//   g(x) = prod_j phi(sqrt(d) x_j),   x in [-1,1]^d,
// built from a one-dimensional plateau profile phi that equals 1 on
// [-1/2,1/2], vanishes outside (-1,1), and interpolates with a polynomial
// smoothstep shoulder of matching smoothness. Consequently g = 1 on the
// plateau [-1/(2 sqrt d), 1/(2 sqrt d)]^d and supp g = [-1/sqrt d, 1/sqrt d]^d.
struct BumpSpec {
    int d = 1;
    double r = 1.0;       // smoothness order the bump is certified for
    int s = 0;            // integer part used by finite-difference checks
    double v = 1.0;       // fractional part, r = s + v with v in (0,1]
    double c0 = 1.0;      // class constant the caller requested
    int shoulder_p = 1;   // smoothstep index; polynomial degree 2p+1
    std::vector<double> shoulder_coeff; // monomial coefficients, degree index
    double measured_holder = 0.0;       // audited seminorm estimate for g

    double profile(double u) const;                    // phi
    double profile_derivative(double u, int order) const;
    double value(std::span<const double> x) const;     // g(x)
    // Analytic partial derivative for a multi-index with |alpha| <= p.
    double partial(std::span<const double> x, std::span<const int> alpha) const;

    double plateau_halfwidth() const;  // 1/(2 sqrt d)
    double support_halfwidth() const;  // 1/sqrt d
    double shoulder_integral() const;  // int_0^1 S_p(t) dt
    double l1_norm() const;            // exact: ((1 + int_0^1 S_p)/sqrt d)^d
    FunctionHandle as_function(std::string label = "bump") const;
};

// Builds the bump and certifies, via finite-difference sampling, that its
// smoothness seminorm fits within c0 * 2^{v-1}. The plateau height is pinned
// at 1, so an undersized c0 is not repairable by scaling; in that case a
// ConstructionError reports the minimal admissible c0.
BumpSpec make_bump(int d, double r, double c0);

} // namespace netcap
