#include "netcap/quadrature.hpp"

#include <cmath>
#include <cstdlib>

#include "netcap/errors.hpp"

namespace netcap {

namespace {

// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration on P_m.
void gauss_legendre(int m, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(static_cast<std::size_t>(m), 0.0);
    weights.assign(static_cast<std::size_t>(m), 0.0);
    const double pi = 3.14159265358979323846;
    for (int i = 0; i < (m + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (m + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            // Evaluate P_m and its derivative by the three-term recurrence.
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= m; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = m * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[static_cast<std::size_t>(i)] = -x;
        nodes[static_cast<std::size_t>(m - 1 - i)] = x;
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        weights[static_cast<std::size_t>(i)] = w;
        weights[static_cast<std::size_t>(m - 1 - i)] = w;
    }
}

} // namespace

QuadratureGrid QuadratureGrid::make(int dim, int nodes_per_axis, QuadScheme scheme) {
    if (dim < 1 || dim > 6) throw DomainError("quadrature dimension must be in 1..6");
    if (nodes_per_axis < 1) throw DomainError("quadrature needs at least one node per axis");
    QuadratureGrid g;
    g.dim_ = dim;
    g.scheme_ = scheme;
    if (scheme == QuadScheme::MidpointTensor) {
        int m = nodes_per_axis;
        double h = 2.0 / m;
        g.axis_nodes_.resize(static_cast<std::size_t>(m));
        g.axis_weights_.assign(static_cast<std::size_t>(m), h);
        for (int i = 0; i < m; ++i)
            g.axis_nodes_[static_cast<std::size_t>(i)] = -1.0 + (i + 0.5) * h;
    } else {
        gauss_legendre(nodes_per_axis, g.axis_nodes_, g.axis_weights_);
    }
    return g;
}

std::size_t QuadratureGrid::point_count() const {
    std::size_t n = 1;
    for (int k = 0; k < dim_; ++k) n *= axis_nodes_.size();
    return n;
}

QuadratureGrid QuadratureGrid::refined() const {
    return make(dim_, 2 * nodes_per_axis(), scheme_);
}

template <typename Fn> void QuadratureGrid::for_each_node(Fn&& fn) const {
    const int m = nodes_per_axis();
    std::vector<int> idx(static_cast<std::size_t>(dim_), 0);
    std::vector<double> x(static_cast<std::size_t>(dim_));
    for (;;) {
        double w = 1.0;
        for (int k = 0; k < dim_; ++k) {
            x[static_cast<std::size_t>(k)] = axis_nodes_[static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])];
            w *= axis_weights_[static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])];
        }
        fn(std::span<const double>(x), w);
        int k = dim_ - 1;
        while (k >= 0 && ++idx[static_cast<std::size_t>(k)] == m) {
            idx[static_cast<std::size_t>(k)] = 0;
            --k;
        }
        if (k < 0) break;
    }
}

std::vector<double> QuadratureGrid::sample(const FunctionHandle& f) const {
    if (f.dim != dim_) throw DomainError("function dimension does not match grid");
    std::vector<double> vals;
    vals.reserve(point_count());
    for_each_node([&](std::span<const double> x, double) { vals.push_back(f.fn(x)); });
    return vals;
}

double QuadratureGrid::integrate(const std::function<double(std::span<const double>)>& f) const {
    double acc = 0.0;
    for_each_node([&](std::span<const double> x, double w) { acc += w * f(x); });
    return acc;
}

double QuadratureGrid::l1_between_samples(std::span<const double> a,
                                          std::span<const double> b) const {
    if (a.size() != point_count() || b.size() != point_count())
        throw DomainError("sample vectors do not match grid size");
    double acc = 0.0;
    std::size_t i = 0;
    for_each_node([&](std::span<const double>, double w) {
        acc += w * std::abs(a[i] - b[i]);
        ++i;
    });
    return acc;
}

double QuadratureGrid::l1_of_samples(std::span<const double> a) const {
    if (a.size() != point_count())
        throw DomainError("sample vector does not match grid size");
    double acc = 0.0;
    std::size_t i = 0;
    for_each_node([&](std::span<const double>, double w) {
        acc += w * std::abs(a[i]);
        ++i;
    });
    return acc;
}

int default_quad_nodes(int dim) {
    if (const char* env = std::getenv("NETCAP_QUAD_NODES")) {
        int m = std::atoi(env);
        if (m >= 1) return m;
    }
    if (dim <= 2) return 64;
    if (dim == 3) return 16;
    return 8;
}

L1Result l1_norm(const FunctionHandle& f, const QuadratureGrid& grid) {
    if (f.dim != grid.dim()) throw DomainError("function dimension does not match grid");
    auto abs_f = [&f](std::span<const double> x) { return std::abs(f.fn(x)); };
    L1Result r;
    r.value = grid.integrate(abs_f);
    r.est_tolerance = std::abs(grid.refined().integrate(abs_f) - r.value);
    return r;
}

L1Result l1_distance(const FunctionHandle& f, const FunctionHandle& g,
                     const QuadratureGrid& grid) {
    if (f.dim != g.dim) throw DomainError("l1_distance needs functions of equal dimension");
    if (f.dim != grid.dim()) throw DomainError("function dimension does not match grid");
    auto abs_diff = [&](std::span<const double> x) { return std::abs(f.fn(x) - g.fn(x)); };
    L1Result r;
    r.value = grid.integrate(abs_diff);
    r.est_tolerance = std::abs(grid.refined().integrate(abs_diff) - r.value);
    return r;
}

} // namespace netcap
