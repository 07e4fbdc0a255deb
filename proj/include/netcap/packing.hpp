#pragma once

#include <iosfwd>
#include <vector>

#include "netcap/quadrature.hpp"

namespace netcap {

// Pairwise L1 distances between candidate functions, sampled once per
// candidate on the given grid. Symmetric with a zero diagonal.
struct DistanceMatrix {
    std::vector<std::string> labels;
    std::vector<double> values;         // row-major n x n
    std::vector<double> est_tolerances; // refinement differences, same layout

    std::size_t size() const { return labels.size(); }
    double at(std::size_t i, std::size_t j) const { return values[i * size() + j]; }
    void write_csv(std::ostream& os) const;
};

DistanceMatrix distance_matrix(const std::vector<FunctionHandle>& candidates,
                               const QuadratureGrid& grid);

// Largest subset of candidates with pairwise L1 distance >= eps (exhaustive;
// guarded at 25 candidates).
int exact_packing_number(const std::vector<FunctionHandle>& candidates, double eps,
                         const QuadratureGrid& grid);

// Smallest subset of candidates whose eps-balls cover all candidates
// (exhaustive over subsets; guarded at 20 candidates).
int exact_covering_number(const std::vector<FunctionHandle>& candidates, double eps,
                          const QuadratureGrid& grid);

// First-fit maximal packing in the caller-supplied order: keep a candidate iff
// it is >= eps from every kept one. Returns kept indices (ascending).
std::vector<int> greedy_packing(const std::vector<FunctionHandle>& candidates, double eps,
                                const QuadratureGrid& grid);

// First-fit cover in the caller-supplied order: a candidate becomes a center
// iff no existing center is within eps. Every candidate ends up within eps of
// some returned center.
std::vector<int> greedy_covering(const std::vector<FunctionHandle>& candidates, double eps,
                                 const QuadratureGrid& grid);

// Same operations over precomputed distances (used internally and by tests).
int exact_packing_number(const DistanceMatrix& dist, double eps);
int exact_covering_number(const DistanceMatrix& dist, double eps);
std::vector<int> greedy_packing(const DistanceMatrix& dist, double eps);
std::vector<int> greedy_covering(const DistanceMatrix& dist, double eps);

} // namespace netcap
