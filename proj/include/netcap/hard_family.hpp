#pragma once

#include "netcap/bump.hpp"
#include "netcap/holder.hpp"
#include "netcap/quadrature.hpp"
#include "netcap/sign_code.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace netcap {

// Uniform tiling of [-1,1]^d into n_star^d axis-aligned cells of side
// 2/n_star. Cells are indexed row-major with the first axis slowest.
struct GridPartition {
    int n_star = 1;
    int d = 1;

    double side() const { return 2.0 / n_star; }
    std::size_t cell_count() const;
    std::vector<double> center(std::size_t k) const;
    // Containing cell, or nullopt when x lies outside the cube. Points on a
    // shared face resolve to the higher-index cell; the far faces at +1
    // resolve inward.
    std::optional<std::size_t> cell_index(std::span<const double> x) const;
};

// Family of sign-modulated, cell-localized copies of one bump:
//   f_w(x) = sum_k w_k * n_star^{-r} * g(n_star * (x - center_k)).
// Each copy lives strictly inside its own cell, so members agree with a
// single scaled bump on every cell.
struct HardFamily {
    BumpSpec bump;
    GridPartition partition;
    SignCode code;

    std::size_t size() const { return code.words.size(); }
    double scale() const; // n_star^{-r}
    double member_value(std::span<const std::int8_t> word,
                        std::span<const double> x) const;
    FunctionHandle member(std::size_t word_index) const;
    FunctionHandle member_from_word(std::vector<std::int8_t> word,
                                    std::string label) const;
    // Exact separation between two materialized members:
    //   n_star^{-r-d} * ||g||_1 * l1(word_i, word_j).
    double closed_form_distance(std::size_t i, std::size_t j) const;
};

// Assembles the partition and a separated sign code with one symbol per
// cell. max_words caps materialization for large grids (the code then
// reports full_cardinality = false).
HardFamily build_family(int n_star, const BumpSpec& bump, std::uint64_t seed = 0,
                        std::size_t max_words = 4096);

struct LocalizationReport {
    int samples = 0;
    std::uint64_t seed = 0;
    int max_overlapping = 0;      // localized copies simultaneously nonzero
    std::vector<double> witness;  // point achieving the maximum
    bool centers_hit = false;     // every cell center sees exactly one copy
    bool pass = false;
};

// Checks that at every probed point at most one localized copy is nonzero,
// scanning the 3^d cell neighborhood directly (plus full scans on a few
// probes) and that each cell center lies on its own copy's plateau.
LocalizationReport verify_localization(const HardFamily& family, int n_samples,
                                       std::uint64_t seed = 0);

// Smoothness audit over sampled members with pairs oversampled near cell
// faces (within 2 * fd_step), merged with globally sampled pairs.
HolderReport verify_class_membership(const HardFamily& family, int n_members,
                                     int n_pairs, std::uint64_t seed = 0,
                                     double fd_step = 1e-4);

struct SeparationReport {
    double bound = 0.0;            // (1/2) d^{-d/2} n_star^{-r}
    double min_distance = 0.0;     // smallest quadrature distance over pairs
    double max_est_tolerance = 0.0;
    double max_closed_form_reldiff = 0.0;
    int pairs_checked = 0;
    bool separation_pass = false;  // every pair: distance >= bound - tolerance
    bool closed_form_pass = false; // quadrature matches closed form to 1e-3
    bool pass = false;
};

// Measures pairwise L1 distances on a cell-aligned midpoint grid with
// nodes_per_cell_axis nodes per cell per axis. The checked set always
// contains the minimally separated code pair, then lexicographic pairs up
// to pair_budget.
SeparationReport verify_separation(const HardFamily& family, int pair_budget,
                                   int nodes_per_cell_axis = 16);

struct NStarChoice {
    long long n_star = 1;
    double required_cells = 0.0; // ceil'd target for n_star^d
    double log2_argument = 0.0;  // argument of the log term
};

// Smallest grid resolution whose cell count supports a capacity target of
// n parameters: n_star^d >= ceil(32 (1 + beta + 3r/d) n log2(arg + n)) with
// arg = 2 c1t + 8 d^{d/2} (1 + beta + 3r/d + c2t).
NStarChoice choose_nstar(int n, double r, int d, double beta, double c1t,
                         double c2t);

} // namespace netcap
