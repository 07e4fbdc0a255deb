#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace netcap {

struct FunctionHandle {
    std::string label;
    int dim = 0;
    std::function<double(std::span<const double>)> fn;

    double operator()(std::span<const double> x) const { return fn(x); }
};

enum class QuadScheme {
    MidpointTensor,      // equal cells, node at each center; robust for kinks
    GaussLegendreTensor, // high order for smooth integrands
};

// Tensor-product quadrature over [-1,1]^dim with m nodes per axis.
class QuadratureGrid {
  public:
    static QuadratureGrid make(int dim, int nodes_per_axis,
                               QuadScheme scheme = QuadScheme::GaussLegendreTensor);

    int dim() const { return dim_; }
    int nodes_per_axis() const { return static_cast<int>(axis_nodes_.size()); }
    QuadScheme scheme() const { return scheme_; }
    std::size_t point_count() const;

    QuadratureGrid refined() const; // same scheme, 2m nodes per axis

    // Integrand values at all tensor nodes, in odometer order (last axis
    // fastest). Useful for caching when many pairwise distances are needed.
    std::vector<double> sample(const FunctionHandle& f) const;

    double integrate(const std::function<double(std::span<const double>)>& f) const;

    // sum_i w_i |a_i - b_i| and sum_i w_i |a_i| over cached samples.
    double l1_between_samples(std::span<const double> a, std::span<const double> b) const;
    double l1_of_samples(std::span<const double> a) const;

    const std::vector<double>& axis_nodes() const { return axis_nodes_; }
    const std::vector<double>& axis_weights() const { return axis_weights_; }

  private:
    int dim_ = 1;
    QuadScheme scheme_ = QuadScheme::GaussLegendreTensor;
    std::vector<double> axis_nodes_;
    std::vector<double> axis_weights_;

    template <typename Fn> void for_each_node(Fn&& fn) const;
};

// Default nodes per axis by dimension (64 for d <= 2, 16 for d = 3, 8 beyond),
// overridable through the NETCAP_QUAD_NODES environment variable.
int default_quad_nodes(int dim);

struct L1Result {
    double value = 0.0;
    double est_tolerance = 0.0; // |value(m) - value(2m)|
};

L1Result l1_norm(const FunctionHandle& f, const QuadratureGrid& grid);
L1Result l1_distance(const FunctionHandle& f, const FunctionHandle& g,
                     const QuadratureGrid& grid);

} // namespace netcap
