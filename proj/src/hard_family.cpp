#include "netcap/hard_family.hpp"
#include "netcap/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <utility>

namespace netcap {

namespace {

constexpr std::size_t kMaxCells = std::size_t{1} << 20;

double member_eval(const BumpSpec& bump, const GridPartition& part, double scale,
                   std::span<const std::int8_t> word, std::span<const double> x) {
    const auto cell = part.cell_index(x);
    if (!cell) return 0.0;
    const std::vector<double> xi = part.center(*cell);
    std::vector<double> u(x.size());
    for (std::size_t j = 0; j < x.size(); ++j)
        u[j] = static_cast<double>(part.n_star) * (x[j] - xi[j]);
    const double g = bump.value(u);
    if (g == 0.0) return 0.0;
    return static_cast<double>(word[*cell]) * scale * g;
}

} // namespace

std::size_t GridPartition::cell_count() const {
    if (n_star < 1 || d < 1)
        throw DomainError("grid partition: n_star and d must be positive");
    std::size_t count = 1;
    for (int j = 0; j < d; ++j) {
        count *= static_cast<std::size_t>(n_star);
        if (count > kMaxCells)
            throw GuardError("grid partition: cell count exceeds the materialization "
                             "guard of 2^20 cells");
    }
    return count;
}

std::vector<double> GridPartition::center(std::size_t k) const {
    std::vector<double> xi(static_cast<std::size_t>(d));
    const double h = side();
    for (int j = d - 1; j >= 0; --j) {
        const std::size_t ij = k % static_cast<std::size_t>(n_star);
        k /= static_cast<std::size_t>(n_star);
        xi[static_cast<std::size_t>(j)] = -1.0 + h * (static_cast<double>(ij) + 0.5);
    }
    return xi;
}

std::optional<std::size_t> GridPartition::cell_index(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != d)
        throw ValidationError("grid partition: point dimension mismatch");
    const double h = side();
    std::size_t k = 0;
    for (double xj : x) {
        if (xj < -1.0 || xj > 1.0) return std::nullopt;
        auto ij = static_cast<long long>(std::floor((xj + 1.0) / h));
        ij = std::clamp(ij, 0LL, static_cast<long long>(n_star) - 1);
        k = k * static_cast<std::size_t>(n_star) + static_cast<std::size_t>(ij);
    }
    return k;
}

double HardFamily::scale() const {
    return std::pow(static_cast<double>(partition.n_star), -bump.r);
}

double HardFamily::member_value(std::span<const std::int8_t> word,
                                std::span<const double> x) const {
    if (word.size() != partition.cell_count())
        throw ValidationError("family member: word length must equal the cell count");
    return member_eval(bump, partition, scale(), word, x);
}

FunctionHandle HardFamily::member(std::size_t word_index) const {
    if (word_index >= code.words.size())
        throw ValidationError("family member: word index out of range");
    return member_from_word(code.words[word_index],
                            "member_" + std::to_string(word_index));
}

FunctionHandle HardFamily::member_from_word(std::vector<std::int8_t> word,
                                            std::string label) const {
    if (word.size() != partition.cell_count())
        throw ValidationError("family member: word length must equal the cell count");
    const BumpSpec b = bump;
    const GridPartition p = partition;
    const double sc = scale();
    return FunctionHandle{std::move(label), partition.d,
                          [b, p, sc, w = std::move(word)](std::span<const double> x) {
                              return member_eval(b, p, sc, w, x);
                          }};
}

double HardFamily::closed_form_distance(std::size_t i, std::size_t j) const {
    const double per_cell =
        std::pow(static_cast<double>(partition.n_star), -bump.r - partition.d) *
        bump.l1_norm();
    return per_cell * static_cast<double>(code.l1(i, j));
}

HardFamily build_family(int n_star, const BumpSpec& bump, std::uint64_t seed,
                        std::size_t max_words) {
    if (n_star < 1) throw DomainError("build_family: n_star must be positive");
    GridPartition part{n_star, bump.d};
    const std::size_t cells = part.cell_count();
    HardFamily family;
    family.bump = bump;
    family.partition = part;
    family.code = gv_code(static_cast<int>(cells), 0, seed, max_words);
    return family;
}

LocalizationReport verify_localization(const HardFamily& family, int n_samples,
                                       std::uint64_t seed) {
    if (n_samples < 1) throw DomainError("verify_localization: need at least one sample");
    const GridPartition& part = family.partition;
    const BumpSpec& bump = family.bump;
    const int d = part.d;
    const std::size_t cells = part.cell_count();

    // Number of localized copies that are nonzero at x, scanning either the
    // 3^d neighborhood of the containing cell or every cell.
    auto count_nonzero = [&](std::span<const double> x, bool full_scan) {
        int nonzero = 0;
        std::vector<double> u(static_cast<std::size_t>(d));
        auto probe_cell = [&](std::size_t k) {
            const std::vector<double> xi = part.center(k);
            for (int j = 0; j < d; ++j)
                u[static_cast<std::size_t>(j)] =
                    part.n_star * (x[static_cast<std::size_t>(j)] -
                                   xi[static_cast<std::size_t>(j)]);
            if (bump.value(u) != 0.0) ++nonzero;
        };
        if (full_scan) {
            for (std::size_t k = 0; k < cells; ++k) probe_cell(k);
            return nonzero;
        }
        const std::size_t home = *part.cell_index(x);
        std::vector<long long> idx(static_cast<std::size_t>(d));
        std::size_t rem = home;
        for (int j = d - 1; j >= 0; --j) {
            idx[static_cast<std::size_t>(j)] =
                static_cast<long long>(rem % static_cast<std::size_t>(part.n_star));
            rem /= static_cast<std::size_t>(part.n_star);
        }
        // Odometer over {-1,0,1}^d offsets.
        std::vector<int> off(static_cast<std::size_t>(d), -1);
        while (true) {
            bool valid = true;
            std::size_t k = 0;
            for (int j = 0; j < d; ++j) {
                const long long ij =
                    idx[static_cast<std::size_t>(j)] + off[static_cast<std::size_t>(j)];
                if (ij < 0 || ij >= part.n_star) { valid = false; break; }
                k = k * static_cast<std::size_t>(part.n_star) + static_cast<std::size_t>(ij);
            }
            if (valid) probe_cell(k);
            int axis = d - 1;
            while (axis >= 0 && off[static_cast<std::size_t>(axis)] == 1)
                off[static_cast<std::size_t>(axis--)] = -1;
            if (axis < 0) break;
            ++off[static_cast<std::size_t>(axis)];
        }
        return nonzero;
    };

    LocalizationReport rep;
    rep.samples = n_samples;
    rep.seed = seed;
    rep.centers_hit = true;

    for (std::size_t k = 0; k < cells; ++k) {
        const std::vector<double> xi = part.center(k);
        const int nz = count_nonzero(xi, false);
        if (nz != 1) rep.centers_hit = false;
        if (nz > rep.max_overlapping) {
            rep.max_overlapping = nz;
            rep.witness = xi;
        }
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int i = 0; i < n_samples; ++i) {
        std::vector<double> x(static_cast<std::size_t>(d));
        for (auto& t : x) t = unif(rng);
        const bool full = (i < 10) && cells <= 4096;
        const int nz = count_nonzero(x, full);
        if (nz > rep.max_overlapping) {
            rep.max_overlapping = nz;
            rep.witness = x;
        }
    }

    rep.pass = rep.centers_hit && rep.max_overlapping <= 1;
    return rep;
}

HolderReport verify_class_membership(const HardFamily& family, int n_members,
                                     int n_pairs, std::uint64_t seed, double fd_step) {
    if (n_members < 1) throw DomainError("verify_class_membership: need n_members >= 1");
    if (n_pairs < 2) throw DomainError("verify_class_membership: need n_pairs >= 2");
    if (family.size() == 0)
        throw DomainError("verify_class_membership: the family has no members");

    const GridPartition& part = family.partition;
    const int d = part.d;
    std::mt19937_64 rng(seed);

    std::vector<std::size_t> chosen(family.size());
    std::iota(chosen.begin(), chosen.end(), std::size_t{0});
    if (chosen.size() > static_cast<std::size_t>(n_members)) {
        std::shuffle(chosen.begin(), chosen.end(), rng);
        chosen.resize(static_cast<std::size_t>(n_members));
    }

    const double margin = 3.0 * fd_step;
    const double lo = -1.0 + margin, hi = 1.0 - margin;
    std::uniform_real_distribution<double> unif(lo, hi);
    std::uniform_real_distribution<double> gap(0.25 * fd_step, 2.0 * fd_step);
    std::uniform_int_distribution<int> axis_pick(0, d - 1);

    const bool has_faces = part.n_star > 1;
    std::vector<PointPair> pairs;
    pairs.reserve(static_cast<std::size_t>(n_pairs));
    while (pairs.size() < static_cast<std::size_t>(n_pairs)) {
        std::vector<double> x(static_cast<std::size_t>(d));
        for (auto& t : x) t = unif(rng);
        std::vector<double> y = x;
        if (has_faces && pairs.size() % 2 == 0) {
            // Straddle a random interior face at distance < 2 fd_step.
            const int axis = axis_pick(rng);
            std::uniform_int_distribution<int> face_pick(1, part.n_star - 1);
            const double face = -1.0 + part.side() * face_pick(rng);
            x[static_cast<std::size_t>(axis)] = std::clamp(face - gap(rng), lo, hi);
            y[static_cast<std::size_t>(axis)] = std::clamp(face + gap(rng), lo, hi);
        } else {
            for (auto& t : y) t = unif(rng);
            double d2 = 0.0;
            for (std::size_t j = 0; j < x.size(); ++j)
                d2 += (x[j] - y[j]) * (x[j] - y[j]);
            if (std::sqrt(d2) < 10.0 * fd_step) continue;
        }
        pairs.emplace_back(std::move(x), std::move(y));
    }

    HolderReport merged;
    bool first = true;
    for (std::size_t idx : chosen) {
        const FunctionHandle f = family.member(idx);
        HolderReport rep = holder_check_pairs(f, family.bump.r, family.bump.c0, pairs,
                                              fd_step, 0.05);
        if (first || rep.max_ratio > merged.max_ratio) {
            const int pairs_so_far = merged.pairs_checked;
            const bool pass_so_far = first ? true : merged.pass;
            merged = rep;
            merged.pairs_checked += pairs_so_far;
            merged.pass = rep.pass && pass_so_far;
            first = false;
        } else {
            merged.pairs_checked += rep.pairs_checked;
            merged.pass = merged.pass && rep.pass;
        }
    }
    return merged;
}

SeparationReport verify_separation(const HardFamily& family, int pair_budget,
                                   int nodes_per_cell_axis) {
    if (pair_budget < 1) throw DomainError("verify_separation: need pair_budget >= 1");
    if (nodes_per_cell_axis < 2)
        throw DomainError("verify_separation: need at least 2 nodes per cell axis");
    if (family.size() < 2)
        throw DomainError("verify_separation: need at least two members");

    const GridPartition& part = family.partition;
    const int d = part.d;
    const long long nodes = static_cast<long long>(part.n_star) * nodes_per_cell_axis;
    double refined_count = 1.0;
    for (int j = 0; j < d; ++j) refined_count *= 2.0 * static_cast<double>(nodes);
    if (nodes > (1 << 21) || refined_count > 4.2e6)
        throw GuardError("verify_separation: quadrature grid exceeds the node guard; "
                         "lower nodes_per_cell_axis");

    // Cell-aligned midpoint rule: kinks at cell faces never meet a node.
    const QuadratureGrid coarse =
        QuadratureGrid::make(d, static_cast<int>(nodes), QuadScheme::MidpointTensor);
    const QuadratureGrid fine = coarse.refined();

    // Locate the minimally separated pair of code words.
    const std::size_t n = family.size();
    const int m = family.code.m;
    const std::size_t blocks = (static_cast<std::size_t>(m) + 63) / 64;
    std::vector<std::uint64_t> packed(n * blocks, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (int t = 0; t < m; ++t)
            if (family.code.words[i][static_cast<std::size_t>(t)] > 0)
                packed[i * blocks + static_cast<std::size_t>(t) / 64] |=
                    std::uint64_t{1} << (static_cast<unsigned>(t) % 64);
    auto hamming = [&](std::size_t i, std::size_t j) {
        int h = 0;
        for (std::size_t b = 0; b < blocks; ++b)
            h += std::popcount(packed[i * blocks + b] ^ packed[j * blocks + b]);
        return h;
    };
    std::pair<std::size_t, std::size_t> closest{0, 1};
    int best = hamming(0, 1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (int h = hamming(i, j); h < best) {
                best = h;
                closest = {i, j};
            }

    std::vector<std::pair<std::size_t, std::size_t>> checked{closest};
    for (std::size_t i = 0; i < n && checked.size() < static_cast<std::size_t>(pair_budget);
         ++i)
        for (std::size_t j = i + 1;
             j < n && checked.size() < static_cast<std::size_t>(pair_budget); ++j)
            if (std::make_pair(i, j) != closest) checked.emplace_back(i, j);

    std::map<std::size_t, std::pair<std::vector<double>, std::vector<double>>> cache;
    auto samples_of = [&](std::size_t idx)
        -> const std::pair<std::vector<double>, std::vector<double>>& {
        auto it = cache.find(idx);
        if (it == cache.end()) {
            const FunctionHandle f = family.member(idx);
            it = cache.emplace(idx, std::make_pair(coarse.sample(f), fine.sample(f)))
                     .first;
        }
        return it->second;
    };

    SeparationReport rep;
    rep.bound = 0.5 * std::pow(static_cast<double>(d), -0.5 * d) *
                std::pow(static_cast<double>(part.n_star), -family.bump.r);
    rep.min_distance = std::numeric_limits<double>::infinity();
    rep.separation_pass = true;
    rep.closed_form_pass = true;

    for (const auto& [i, j] : checked) {
        const auto& si = samples_of(i);
        const auto& sj = samples_of(j);
        const double coarse_dist = coarse.l1_between_samples(si.first, sj.first);
        const double fine_dist = fine.l1_between_samples(si.second, sj.second);
        const double tol = std::abs(fine_dist - coarse_dist);
        const double dist = fine_dist;
        const double cf = family.closed_form_distance(i, j);

        rep.min_distance = std::min(rep.min_distance, dist);
        rep.max_est_tolerance = std::max(rep.max_est_tolerance, tol);
        if (cf > 0.0)
            rep.max_closed_form_reldiff =
                std::max(rep.max_closed_form_reldiff, std::abs(dist - cf) / cf);
        if (dist < rep.bound - tol) rep.separation_pass = false;
        ++rep.pairs_checked;
    }
    rep.closed_form_pass = rep.max_closed_form_reldiff <= 1e-3;
    rep.pass = rep.separation_pass && rep.closed_form_pass;
    return rep;
}

NStarChoice choose_nstar(int n, double r, int d, double beta, double c1t, double c2t) {
    if (n < 1) throw DomainError("choose_nstar: n must be positive");
    if (r <= 0.0) throw DomainError("choose_nstar: r must be positive");
    if (d < 1) throw DomainError("choose_nstar: d must be positive");
    if (beta < 0.0) throw DomainError("choose_nstar: beta must be nonnegative");
    if (c1t <= 0.0 || c2t <= 0.0)
        throw DomainError("choose_nstar: the class constants must be positive");

    const double smoothness_load = 1.0 + beta + 3.0 * r / d;
    const double arg = 2.0 * c1t +
                       8.0 * std::pow(static_cast<double>(d), 0.5 * d) *
                           (smoothness_load + c2t) +
                       static_cast<double>(n);
    NStarChoice choice;
    choice.log2_argument = arg;
    choice.required_cells =
        std::ceil(32.0 * smoothness_load * static_cast<double>(n) * std::log2(arg));
    if (choice.required_cells > 9e15)
        throw GuardError("choose_nstar: required cell count exceeds the integer range");

    auto cells_of = [&](long long nstar) {
        double c = 1.0;
        for (int j = 0; j < d; ++j) c *= static_cast<double>(nstar);
        return c;
    };
    long long nstar = static_cast<long long>(
        std::ceil(std::pow(choice.required_cells, 1.0 / d) - 1e-9));
    if (nstar < 1) nstar = 1;
    while (cells_of(nstar) < choice.required_cells) ++nstar;
    while (nstar > 1 && cells_of(nstar - 1) >= choice.required_cells) --nstar;
    choice.n_star = nstar;
    return choice;
}

} // namespace netcap
