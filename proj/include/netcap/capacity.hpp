#pragma once

#include <cstdint>
#include <vector>

#include "netcap/architecture.hpp"
#include "netcap/quadrature.hpp"

namespace netcap {

// The derived constants every covering estimate is phrased in:
//   c1_prime = 6 c1 c (1 + 2^{d+1})
//   c2_prime = 2 c  (1 + 2^{d+1})
//   c3       = 2 max(c1_prime, c2_prime)
// with c >= 1 the growth constant, c1 > 0 the Lipschitz constant and d the
// input dimension.
struct ConstantLedger {
    double c = 1.0;
    double c1 = 1.0;
    int d = 1;
    double c1_prime = 0.0;
    double c2_prime = 0.0;
    double c3 = 0.0;
};

ConstantLedger constant_ledger(double c, double c1, int d);

// Ledger for an architecture: worst (largest) activation constants across
// layers, input dimension from the architecture.
ConstantLedger ledger_for(const Architecture& arch);

// Stage constant of the layer-peeling argument, for 1 <= ell <= L+1:
//   ell <  L:  2 (max(c1',c2') R)^ell * D_ell^2 * D_{ell+1}
//   ell == L:  2 (max(c1',c2') R)^L * D_L^2
//   ell == L+1: 2 (max(c1',c2') R)^{L+1} * D_L^2
// where D_l = d_l * ... * d_0.
double stage_constant(const ConstantLedger& ledger, const Architecture& arch, int ell);

// log2 of the covering number of one layer's weight-matrix class:
// free_count * log2(2 d_out d_in R / eps), clamped at 0 when a single point
// suffices (eps >= 2 d_out d_in R) or when there is nothing free.
double matrix_net_size(int d_out, int d_in, int free_count, double R, double eps);

// log2 of the layer-recursion covering estimate for hidden layers 1..ell,
// unrolled down to the base layer. Each unrolling step multiplies by
// (c1' R)^{l F_l} D_l^{2 F_l} eps^{-F_l} and shrinks eps by (c1' R)^{l-1} D_l;
// the base layer contributes F_1 log2(c1' R D_1 / eps). Terms are clamped at
// zero (a covering number is never below one point).
double layer_recursion_bound(const Architecture& arch, int ell, double eps);

// Whole-network covering estimate in log2 form.
struct CoveringBound {
    double epsilon = 0.0;
    int n = 0;          // free parameters (per-block sum)
    int L = 0;          // depth
    double radius = 1.0;
    double d_max = 1.0; // max width
    double d_prod = 1.0; // D_L = d_L ... d_0
    ConstantLedger ledger;
    double log2_tight = 0.0;   // (L+1) n [(L+1) log2(c3 R) + 3 log2 D_L] + n log2(1/eps)
    double log2_relaxed = 0.0; // 3 (L+1)^2 n log2(c3 R Dmax) + n log2(1/eps)
};

CoveringBound covering_bound_from_inputs(int n, int L, double R, double d_max,
                                         double d_prod, const ConstantLedger& ledger,
                                         double eps);
CoveringBound network_covering_bound(const Architecture& arch, double eps);

// ---- explicit nets -------------------------------------------------------

// Centers -R+eps, -R+3eps, ... : ceil(R/eps) points covering [-R, R] with
// radius eps. Requires 0 < eps <= 2R.
std::vector<double> build_interval_net(double R, double eps);

// How strongly each free slot can move the network in L1, assembled from the
// layer-peeling perturbation estimates:
//   weights of layer l:   c1 * Bnd_{l-1} per unit of entrywise-L1 change
//   biases of layer l:    2^d * c1 per unit of sup change
//   hidden layers l+1..L: factor c1 d_k d_{k-1} R each
//   output row:           d_L R per unit of hidden change, Bnd_L per unit of
//                         entrywise-L1 change of the row itself
// with Bnd_l the uniform layer-output bound (Bnd_0 = 1).
struct ParamSensitivity {
    std::vector<double> per_param; // one entry per free slot
    struct LayerFactors {
        double weight_factor = 0.0; // c1 * Bnd_{l-1}
        double bias_factor = 0.0;   // 2^d * c1
        double propagation = 0.0;   // prod_{k>l} (c1 d_k d_{k-1} R) * d_L R
    };
    std::vector<LayerFactors> layers;
    double output_factor = 0.0; // Bnd_L
};

ParamSensitivity parameter_sensitivity(const Architecture& arch);

struct EpsilonNet {
    double epsilon = 0.0;
    double certified_radius = 0.0; // sum_i S_i * rho_i
    std::vector<std::vector<double>> param_grids;
    std::vector<ParamAssignment> points;
    ParamSensitivity sensitivity;
    double log2_size() const;
};

// Product grid over parameter space whose image in function space is an
// eps-net. Guarded: at most 6 free slots and 32 points per slot.
EpsilonNet enumerate_epsilon_net(const Architecture& arch, double eps);

struct NetValidation {
    int draws = 0;
    std::uint64_t seed = 0;
    double max_observed_distance = 0.0;
    double max_est_tolerance = 0.0;
    bool pass = false; // every draw within epsilon + quadrature tolerance
};

NetValidation validate_epsilon_net(const Architecture& arch, const EpsilonNet& net,
                                   int draws, const QuadratureGrid& grid,
                                   std::uint64_t seed = 0);

// ---- empirical packing vs. the bound ------------------------------------

struct PackingReport {
    double epsilon = 0.0;
    int sample_count = 0;
    int packing_count = 0;   // greedy packing of the samples at 2*eps
    double log2_packing = 0.0;
    double log2_tight = 0.0;
    double log2_relaxed = 0.0;
    bool violation = false;  // empirical packing exceeded the tight bound
};

PackingReport packing_vs_bound_report(const Architecture& arch, double eps,
                                      const std::vector<ParamAssignment>& samples,
                                      const QuadratureGrid& grid);

// Network as a function of x for fixed parameters.
FunctionHandle net_function(const Architecture& arch, const ParamAssignment& params,
                            std::string label = "");

} // namespace netcap
