#include "netcap/holder.hpp"

#include <cmath>
#include <random>

#include "netcap/errors.hpp"

namespace netcap {

SmoothnessSplit split_smoothness(double r) {
    if (!(r > 0.0)) throw DomainError("smoothness order r must be positive");
    SmoothnessSplit sp;
    double fl = std::floor(r);
    if (r == fl) {
        sp.s = static_cast<int>(fl) - 1;
        sp.v = 1.0;
    } else {
        sp.s = static_cast<int>(fl);
        sp.v = r - fl;
    }
    return sp;
}

namespace {

struct MultiIndex {
    int j = -1, k = -1; // order-1 uses j; order-2 uses j,k (j == k for pure)
};

std::vector<MultiIndex> order_s_indices(int dim, int s) {
    std::vector<MultiIndex> out;
    if (s == 0) {
        out.push_back({});
    } else if (s == 1) {
        for (int j = 0; j < dim; ++j) out.push_back({j, -1});
    } else {
        for (int j = 0; j < dim; ++j)
            for (int k = j; k < dim; ++k) out.push_back({j, k});
    }
    return out;
}

double fd_partial(const FunctionHandle& f, std::span<const double> x, const MultiIndex& mi,
                  int s, double h) {
    std::vector<double> p(x.begin(), x.end());
    if (s == 0) return f.fn(p);
    if (s == 1) {
        p[static_cast<std::size_t>(mi.j)] = x[static_cast<std::size_t>(mi.j)] + h;
        double fp = f.fn(p);
        p[static_cast<std::size_t>(mi.j)] = x[static_cast<std::size_t>(mi.j)] - h;
        double fm = f.fn(p);
        return (fp - fm) / (2.0 * h);
    }
    // s == 2
    if (mi.j == mi.k) {
        double f0 = f.fn(p);
        p[static_cast<std::size_t>(mi.j)] = x[static_cast<std::size_t>(mi.j)] + h;
        double fp = f.fn(p);
        p[static_cast<std::size_t>(mi.j)] = x[static_cast<std::size_t>(mi.j)] - h;
        double fm = f.fn(p);
        return (fp - 2.0 * f0 + fm) / (h * h);
    }
    auto eval = [&](double sj, double sk) {
        p[static_cast<std::size_t>(mi.j)] = x[static_cast<std::size_t>(mi.j)] + sj * h;
        p[static_cast<std::size_t>(mi.k)] = x[static_cast<std::size_t>(mi.k)] + sk * h;
        double val = f.fn(p);
        p[static_cast<std::size_t>(mi.j)] = x[static_cast<std::size_t>(mi.j)];
        p[static_cast<std::size_t>(mi.k)] = x[static_cast<std::size_t>(mi.k)];
        return val;
    };
    return (eval(1, 1) - eval(1, -1) - eval(-1, 1) + eval(-1, -1)) / (4.0 * h * h);
}

void check_fd_step(double fd_step) {
    if (!(fd_step > 0.0) || fd_step > 0.02)
        throw DomainError("fd_step must lie in (0, 0.02]: the difference stencil must be "
                          "small relative to the unit cube");
}

HolderReport run_pairs(const FunctionHandle& f, double r, double c0,
                       const std::vector<PointPair>& pairs, double fd_step, double slack) {
    auto sp = split_smoothness(r);
    if (sp.s > 2)
        throw GuardError("holder_check supports orders with s <= 2 (r <= 3)");
    check_fd_step(fd_step);
    if (!(c0 > 0.0)) throw DomainError("c0 must be positive");

    HolderReport rep;
    rep.r = r;
    rep.s = sp.s;
    rep.v = sp.v;
    rep.c0 = c0;
    rep.fd_step = fd_step;
    rep.slack = slack;

    auto indices = order_s_indices(f.dim, sp.s);
    for (const auto& [x, y] : pairs) {
        if (x.size() != static_cast<std::size_t>(f.dim) || y.size() != x.size())
            throw DomainError("pair dimension does not match function");
        double dist2 = 0.0;
        for (std::size_t t = 0; t < x.size(); ++t) dist2 += (x[t] - y[t]) * (x[t] - y[t]);
        double dist = std::sqrt(dist2);
        if (dist == 0.0) continue;
        double denom = std::pow(dist, sp.v);
        for (const auto& mi : indices) {
            double dx = fd_partial(f, x, mi, sp.s, fd_step);
            double dy = fd_partial(f, y, mi, sp.s, fd_step);
            double ratio = std::abs(dx - dy) / denom;
            if (ratio > rep.max_ratio) {
                rep.max_ratio = ratio;
                rep.witness_x = x;
                rep.witness_y = y;
            }
        }
        ++rep.pairs_checked;
    }
    rep.pass = rep.max_ratio <= c0 * (1.0 + slack);
    return rep;
}

} // namespace

HolderReport holder_check_pairs(const FunctionHandle& f, double r, double c0,
                                const std::vector<PointPair>& pairs, double fd_step,
                                double slack) {
    return run_pairs(f, r, c0, pairs, fd_step, slack);
}

HolderReport holder_check(const FunctionHandle& f, double r, double c0, int n_pairs,
                          double fd_step, std::uint64_t seed, double slack) {
    if (n_pairs <= 0) throw DomainError("n_pairs must be positive");
    auto sp = split_smoothness(r); // also validates r
    check_fd_step(fd_step);

    // Keep the full difference stencil inside the cube.
    double margin = (sp.s > 0 ? 3.0 * fd_step : 0.0);
    double lo = -1.0 + margin, hi = 1.0 - margin;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(lo, hi);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);

    double min_sep = 10.0 * fd_step;
    std::vector<PointPair> pairs;
    pairs.reserve(static_cast<std::size_t>(n_pairs));
    while (pairs.size() < static_cast<std::size_t>(n_pairs)) {
        std::vector<double> x(static_cast<std::size_t>(f.dim));
        for (auto& t : x) t = unif(rng);
        std::vector<double> y(static_cast<std::size_t>(f.dim));
        if (pairs.size() % 2 == 0) {
            for (auto& t : y) t = unif(rng);
        } else {
            // Short-range pair: random direction, log-uniform length.
            double len = std::exp(std::log(min_sep) +
                                  u01(rng) * (std::log(1.0) - std::log(min_sep)));
            double norm2 = 0.0;
            std::vector<double> dir(static_cast<std::size_t>(f.dim));
            for (auto& t : dir) {
                t = gauss(rng);
                norm2 += t * t;
            }
            double norm = std::sqrt(norm2);
            if (norm == 0.0) continue;
            for (std::size_t t = 0; t < y.size(); ++t) {
                y[t] = x[t] + len * dir[t] / norm;
                y[t] = std::min(hi, std::max(lo, y[t]));
            }
        }
        double d2 = 0.0;
        for (std::size_t t = 0; t < x.size(); ++t) d2 += (x[t] - y[t]) * (x[t] - y[t]);
        if (std::sqrt(d2) < min_sep) continue;
        pairs.emplace_back(std::move(x), std::move(y));
    }
    return run_pairs(f, r, c0, pairs, fd_step, slack);
}

} // namespace netcap
