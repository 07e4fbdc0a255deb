#include "netcap/packing.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <ostream>

#include "netcap/errors.hpp"

namespace netcap {

void DistanceMatrix::write_csv(std::ostream& os) const {
    os << "label";
    for (const auto& l : labels) os << ',' << l;
    os << '\n';
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i) {
        os << labels[i];
        for (std::size_t j = 0; j < n; ++j) os << ',' << at(i, j);
        os << '\n';
    }
}

DistanceMatrix distance_matrix(const std::vector<FunctionHandle>& candidates,
                               const QuadratureGrid& grid) {
    const std::size_t n = candidates.size();
    DistanceMatrix m;
    m.labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        m.labels.push_back(candidates[i].label.empty() ? "f" + std::to_string(i)
                                                       : candidates[i].label);
    QuadratureGrid fine = grid.refined();
    std::vector<std::vector<double>> coarse_vals(n), fine_vals(n);
    for (std::size_t i = 0; i < n; ++i) {
        coarse_vals[i] = grid.sample(candidates[i]);
        fine_vals[i] = fine.sample(candidates[i]);
    }
    m.values.assign(n * n, 0.0);
    m.est_tolerances.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double v = grid.l1_between_samples(coarse_vals[i], coarse_vals[j]);
            double vf = fine.l1_between_samples(fine_vals[i], fine_vals[j]);
            m.values[i * n + j] = m.values[j * n + i] = v;
            m.est_tolerances[i * n + j] = m.est_tolerances[j * n + i] = std::abs(vf - v);
        }
    return m;
}

namespace {

void check_eps(double eps) {
    if (!(eps > 0.0)) throw DomainError("eps must be positive");
}

} // namespace

int exact_packing_number(const DistanceMatrix& dist, double eps) {
    check_eps(eps);
    const int n = static_cast<int>(dist.size());
    if (n > 25) throw GuardError("exact packing is limited to 25 candidates");
    if (n == 0) return 0;

    // Max clique in the graph joining pairs at distance >= eps,
    // Bron-Kerbosch with pivoting on bitmasks.
    std::vector<std::uint32_t> adj(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && dist.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) >= eps)
                adj[static_cast<std::size_t>(i)] |= (1u << j);

    int best = 0;
    std::function<void(int, std::uint32_t, std::uint32_t)> expand =
        [&](int rsize, std::uint32_t P, std::uint32_t X) {
            if (P == 0 && X == 0) {
                best = std::max(best, rsize);
                return;
            }
            if (rsize + std::popcount(P) <= best) return;
            std::uint32_t PX = P | X;
            int pivot = -1, pivot_deg = -1;
            for (std::uint32_t t = PX; t;) {
                int v = std::countr_zero(t);
                t &= t - 1;
                int deg = std::popcount(P & adj[static_cast<std::size_t>(v)]);
                if (deg > pivot_deg) {
                    pivot_deg = deg;
                    pivot = v;
                }
            }
            std::uint32_t ext = P & ~adj[static_cast<std::size_t>(pivot)];
            for (std::uint32_t t = ext; t;) {
                int v = std::countr_zero(t);
                t &= t - 1;
                expand(rsize + 1, P & adj[static_cast<std::size_t>(v)],
                       X & adj[static_cast<std::size_t>(v)]);
                P &= ~(1u << v);
                X |= (1u << v);
            }
        };
    std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1u);
    expand(0, full, 0);
    return best;
}

int exact_covering_number(const DistanceMatrix& dist, double eps) {
    check_eps(eps);
    const int n = static_cast<int>(dist.size());
    if (n > 20) throw GuardError("exact covering is limited to 20 candidates");
    if (n == 0) return 0;

    std::vector<std::uint32_t> ball(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (dist.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) <= eps)
                ball[static_cast<std::size_t>(i)] |= (1u << j);

    const std::uint32_t full = (1u << n) - 1u;
    std::vector<std::uint8_t> dp(static_cast<std::size_t>(full) + 1, 255);
    dp[0] = 0;
    for (std::uint32_t mask = 0; mask < full; ++mask) {
        if (dp[mask] == 255) continue;
        int need = std::countr_zero(~mask); // lowest uncovered candidate
        for (int c = 0; c < n; ++c) {
            if (!(ball[static_cast<std::size_t>(c)] & (1u << need))) continue;
            std::uint32_t next = mask | ball[static_cast<std::size_t>(c)];
            if (dp[next] > dp[mask] + 1) dp[next] = static_cast<std::uint8_t>(dp[mask] + 1);
        }
    }
    return dp[full];
}

std::vector<int> greedy_packing(const DistanceMatrix& dist, double eps) {
    check_eps(eps);
    std::vector<int> kept;
    const std::size_t n = dist.size();
    for (std::size_t i = 0; i < n; ++i) {
        bool ok = true;
        for (int k : kept)
            if (dist.at(i, static_cast<std::size_t>(k)) < eps) {
                ok = false;
                break;
            }
        if (ok) kept.push_back(static_cast<int>(i));
    }
    return kept;
}

std::vector<int> greedy_covering(const DistanceMatrix& dist, double eps) {
    check_eps(eps);
    std::vector<int> centers;
    const std::size_t n = dist.size();
    for (std::size_t i = 0; i < n; ++i) {
        bool covered = false;
        for (int c : centers)
            if (dist.at(i, static_cast<std::size_t>(c)) <= eps) {
                covered = true;
                break;
            }
        if (!covered) centers.push_back(static_cast<int>(i));
    }
    return centers;
}

int exact_packing_number(const std::vector<FunctionHandle>& candidates, double eps,
                         const QuadratureGrid& grid) {
    if (candidates.size() > 25) throw GuardError("exact packing is limited to 25 candidates");
    return exact_packing_number(distance_matrix(candidates, grid), eps);
}

int exact_covering_number(const std::vector<FunctionHandle>& candidates, double eps,
                          const QuadratureGrid& grid) {
    if (candidates.size() > 20) throw GuardError("exact covering is limited to 20 candidates");
    return exact_covering_number(distance_matrix(candidates, grid), eps);
}

std::vector<int> greedy_packing(const std::vector<FunctionHandle>& candidates, double eps,
                                const QuadratureGrid& grid) {
    // First-fit needs only distances to already-kept members; sample lazily.
    check_eps(eps);
    std::vector<int> kept;
    std::vector<std::vector<double>> kept_vals;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        auto vals = grid.sample(candidates[i]);
        bool ok = true;
        for (const auto& kv : kept_vals)
            if (grid.l1_between_samples(vals, kv) < eps) {
                ok = false;
                break;
            }
        if (ok) {
            kept.push_back(static_cast<int>(i));
            kept_vals.push_back(std::move(vals));
        }
    }
    return kept;
}

std::vector<int> greedy_covering(const std::vector<FunctionHandle>& candidates, double eps,
                                 const QuadratureGrid& grid) {
    check_eps(eps);
    std::vector<int> centers;
    std::vector<std::vector<double>> center_vals;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        auto vals = grid.sample(candidates[i]);
        bool covered = false;
        for (const auto& cv : center_vals)
            if (grid.l1_between_samples(vals, cv) <= eps) {
                covered = true;
                break;
            }
        if (!covered) {
            centers.push_back(static_cast<int>(i));
            center_vals.push_back(std::move(vals));
        }
    }
    return centers;
}

} // namespace netcap
