#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "netcap/quadrature.hpp"

namespace netcap {

// Split a smoothness order r > 0 as r = s + v with integer s >= 0 and
// 0 < v <= 1 (integer r gives s = r - 1, v = 1).
struct SmoothnessSplit {
    int s = 0;
    double v = 1.0;
};
SmoothnessSplit split_smoothness(double r);

using PointPair = std::pair<std::vector<double>, std::vector<double>>;

struct HolderReport {
    double r = 0.0;
    int s = 0;
    double v = 1.0;
    double c0 = 0.0;
    double fd_step = 1e-4;
    double slack = 0.05;
    double max_ratio = 0.0; // sup over pairs/partials of |D^a f(x)-D^a f(y)| / |x-y|^v
    int pairs_checked = 0;
    bool pass = false;      // max_ratio <= c0 * (1 + slack)
    std::vector<double> witness_x, witness_y;
};

// Sampled smoothness certificate: order-s partials are approximated by
// central differences of step fd_step and compared across random pairs
// (a mix of long-range and short-range pairs). Supports s <= 2.
HolderReport holder_check(const FunctionHandle& f, double r, double c0,
                          int n_pairs = 2000, double fd_step = 1e-4,
                          std::uint64_t seed = 0, double slack = 0.05);

// Same check over caller-supplied pairs (e.g. pairs straddling cell faces).
HolderReport holder_check_pairs(const FunctionHandle& f, double r, double c0,
                                const std::vector<PointPair>& pairs,
                                double fd_step = 1e-4, double slack = 0.05);

} // namespace netcap
