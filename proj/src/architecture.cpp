#include "netcap/architecture.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "netcap/errors.hpp"

namespace netcap {

namespace {

int distinct_free(const std::vector<EntrySpec>& entries) {
    std::set<int> idx;
    for (const auto& e : entries)
        if (e.is_free()) idx.insert(e.index);
    return static_cast<int>(idx.size());
}

double resolve(const EntrySpec& e, const ParamAssignment& params) {
    return e.is_free() ? params.values[static_cast<std::size_t>(e.index)] : e.value;
}

} // namespace

int LayerStructure::free_weight_count() const { return distinct_free(weights); }
int LayerStructure::free_bias_count() const { return distinct_free(biases); }

void Architecture::validate() const {
    if (input_dim <= 0) throw ValidationError("input_dim must be positive");
    if (!(radius >= 1.0)) throw ValidationError("radius must be >= 1");
    if (layers.empty()) throw ValidationError("at least one layer is required");

    int prev = input_dim;
    for (std::size_t l = 0; l < layers.size(); ++l) {
        const auto& layer = layers[l];
        std::string where = "layer " + std::to_string(l + 1);
        if (layer.d_in != prev)
            throw ValidationError(where + ": d_in " + std::to_string(layer.d_in) +
                                  " does not match preceding width " + std::to_string(prev));
        if (layer.d_out <= 0) throw ValidationError(where + ": d_out must be positive");
        if (layer.weights.size() != static_cast<std::size_t>(layer.d_in) * layer.d_out)
            throw ValidationError(where + ": weight grid is not d_out x d_in");
        if (layer.biases.size() != static_cast<std::size_t>(layer.d_out))
            throw ValidationError(where + ": bias vector is not d_out long");
        if (!layer.activation.fn)
            throw ValidationError(where + ": activation is not set");
        if (!(layer.activation.growth_c >= 1.0) || !(layer.activation.lipschitz_c1 > 0.0))
            throw ValidationError(where + ": activation constants must satisfy c >= 1, c1 > 0");
        prev = layer.d_out;
    }
    if (output.size() != static_cast<std::size_t>(prev))
        throw ValidationError("output row length does not match last layer width");

    // Fixed entries must respect the radius; free slots must form 0..n-1.
    std::set<int> idx;
    auto scan = [&](const std::vector<EntrySpec>& entries, const std::string& where) {
        for (const auto& e : entries) {
            if (e.is_free()) {
                idx.insert(e.index);
            } else if (std::abs(e.value) > radius) {
                throw ValidationError(where + ": fixed entry " + std::to_string(e.value) +
                                      " lies outside [-radius, radius]");
            }
        }
    };
    for (std::size_t l = 0; l < layers.size(); ++l) {
        scan(layers[l].weights, "layer " + std::to_string(l + 1) + " weights");
        scan(layers[l].biases, "layer " + std::to_string(l + 1) + " biases");
    }
    scan(output, "output row");

    if (!idx.empty()) {
        if (*idx.begin() < 0) throw ValidationError("negative free-parameter index");
        int expected = 0;
        for (int i : idx) {
            if (i != expected)
                throw ValidationError("free-parameter indices have a gap: missing index " +
                                      std::to_string(expected));
            ++expected;
        }
    }
}

int Architecture::free_param_count() const {
    int total = 0;
    for (const auto& layer : layers)
        total += layer.free_weight_count() + layer.free_bias_count();
    total += distinct_free(output);
    return total;
}

int Architecture::param_count() const {
    std::set<int> idx;
    auto scan = [&](const std::vector<EntrySpec>& entries) {
        for (const auto& e : entries)
            if (e.is_free()) idx.insert(e.index);
    };
    for (const auto& layer : layers) {
        scan(layer.weights);
        scan(layer.biases);
    }
    scan(output);
    return static_cast<int>(idx.size());
}

int Architecture::free_output_count() const { return distinct_free(output); }

int Architecture::max_width() const {
    int m = input_dim;
    for (const auto& layer : layers) m = std::max(m, layer.d_out);
    return m;
}

double Architecture::width_product(int l) const {
    if (l < 1 || l > depth()) throw DomainError("width_product: layer index out of range");
    double prod = input_dim; // d_0
    for (int k = 1; k < l; ++k) prod *= layers[static_cast<std::size_t>(k - 1)].d_out;
    return prod;
}

void Architecture::check_params(const ParamAssignment& params) const {
    if (params.values.size() != static_cast<std::size_t>(param_count()))
        throw ValidationError("parameter vector has wrong length");
    for (double v : params.values)
        if (std::abs(v) > radius)
            throw DomainError("parameter value outside [-radius, radius]");
}

std::vector<double> Architecture::weight_matrix(int layer, const ParamAssignment& params) const {
    const auto& L = layers.at(static_cast<std::size_t>(layer));
    std::vector<double> w(L.weights.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = resolve(L.weights[i], params);
    return w;
}

std::vector<double> Architecture::bias_vector(int layer, const ParamAssignment& params) const {
    const auto& L = layers.at(static_cast<std::size_t>(layer));
    std::vector<double> b(L.biases.size());
    for (std::size_t i = 0; i < b.size(); ++i) b[i] = resolve(L.biases[i], params);
    return b;
}

std::vector<double> Architecture::output_vector(const ParamAssignment& params) const {
    std::vector<double> a(output.size());
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = resolve(output[i], params);
    return a;
}

std::vector<std::vector<double>> Architecture::layer_outputs(const ParamAssignment& params,
                                                             std::span<const double> x) const {
    check_params(params);
    if (x.size() != static_cast<std::size_t>(input_dim))
        throw DomainError("evaluation point has wrong dimension");
    for (double xi : x)
        if (std::abs(xi) > 1.0)
            throw DomainError("evaluation point outside [-1,1]^d");

    std::vector<std::vector<double>> outs;
    outs.reserve(layers.size());
    std::vector<double> h(x.begin(), x.end());
    for (const auto& layer : layers) {
        std::vector<double> z(static_cast<std::size_t>(layer.d_out));
        for (int i = 0; i < layer.d_out; ++i) {
            double acc = resolve(layer.biases[static_cast<std::size_t>(i)], params);
            for (int j = 0; j < layer.d_in; ++j)
                acc += resolve(layer.weight(i, j), params) * h[static_cast<std::size_t>(j)];
            z[static_cast<std::size_t>(i)] = layer.activation(acc);
        }
        h = z;
        outs.push_back(h);
    }
    return outs;
}

double Architecture::evaluate(const ParamAssignment& params, std::span<const double> x) const {
    auto outs = layer_outputs(params, x);
    const auto& h = outs.back();
    double acc = 0.0;
    for (std::size_t i = 0; i < output.size(); ++i)
        acc += resolve(output[i], params) * h[i];
    return acc;
}

long long dense_param_count(const std::vector<int>& widths) {
    if (widths.size() < 2)
        throw ValidationError("dense_param_count needs a width chain of length >= 2");
    for (int w : widths)
        if (w <= 0) throw ValidationError("widths must be positive");
    long long total = widths.back();
    for (std::size_t k = 1; k < widths.size(); ++k) {
        long long din = widths[k - 1], dout = widths[k];
        total += din * dout + dout;
    }
    return total;
}

double uniform_output_bound(const Architecture& arch, int l) {
    if (l < 1 || l > arch.depth())
        throw DomainError("uniform_output_bound: layer index out of range");
    double c = 1.0;
    for (int k = 0; k < l; ++k)
        c = std::max(c, arch.layers[static_cast<std::size_t>(k)].activation.growth_c);
    double base = c * (1.0 + std::pow(2.0, arch.input_dim + 1)) * arch.radius;
    return std::pow(base, l) * arch.width_product(l);
}

} // namespace netcap
