#include <algorithm>
#include <cmath>

#include "netcap/architecture.hpp"
#include "netcap/errors.hpp"

namespace netcap {

Architecture dense_architecture(const std::vector<int>& widths,
                                const ActivationSpec& act, double radius) {
    if (widths.size() < 2)
        throw ValidationError("dense preset needs a width chain of length >= 2");
    Architecture arch;
    arch.input_dim = widths.front();
    arch.radius = radius;
    int next = 0;
    for (std::size_t k = 1; k < widths.size(); ++k) {
        LayerStructure layer;
        layer.d_in = widths[k - 1];
        layer.d_out = widths[k];
        layer.activation = act;
        layer.weights.resize(static_cast<std::size_t>(layer.d_in) * layer.d_out);
        for (auto& e : layer.weights) e = EntrySpec::free_at(next++);
        layer.biases.resize(static_cast<std::size_t>(layer.d_out));
        for (auto& e : layer.biases) e = EntrySpec::free_at(next++);
        arch.layers.push_back(std::move(layer));
    }
    arch.output.resize(static_cast<std::size_t>(widths.back()));
    for (auto& e : arch.output) e = EntrySpec::free_at(next++);
    arch.validate();
    return arch;
}

Architecture toeplitz1d_architecture(int width, int kernel_size, int n_layers,
                                     const ActivationSpec& act, double radius) {
    if (width <= 0 || n_layers <= 0)
        throw ValidationError("toeplitz1d preset needs positive width and layer count");
    if (kernel_size <= 0 || kernel_size > width)
        throw ValidationError("toeplitz1d kernel size must be in 1..width");

    Architecture arch;
    arch.input_dim = width;
    arch.radius = radius;
    int next = 0;
    int half = kernel_size / 2;
    for (int l = 0; l < n_layers; ++l) {
        LayerStructure layer;
        layer.d_in = width;
        layer.d_out = width;
        layer.activation = act;
        layer.weights.assign(static_cast<std::size_t>(width) * width, EntrySpec::fixed(0.0));
        // Entries on the same diagonal share one kernel slot.
        int kernel_base = next;
        next += kernel_size;
        for (int i = 0; i < width; ++i)
            for (int t = 0; t < kernel_size; ++t) {
                int j = i + t - half;
                if (j >= 0 && j < width) layer.weight(i, j) = EntrySpec::free_at(kernel_base + t);
            }
        layer.biases.assign(static_cast<std::size_t>(width), EntrySpec::free_at(next));
        ++next; // one shared bias per layer
        arch.layers.push_back(std::move(layer));
    }
    arch.output.resize(static_cast<std::size_t>(width));
    for (auto& e : arch.output) e = EntrySpec::free_at(next++);
    arch.validate();
    return arch;
}

Architecture tree_architecture(int depth, const ActivationSpec& act, double radius) {
    if (depth < 1) throw ValidationError("tree preset needs depth >= 1");
    if (depth > 16) throw ValidationError("tree preset depth is limited to 16");

    Architecture arch;
    arch.input_dim = 1 << depth;
    arch.radius = radius;
    int next = 0;
    int w = arch.input_dim;
    while (w > 1) {
        LayerStructure layer;
        layer.d_in = w;
        layer.d_out = w / 2;
        layer.activation = act;
        layer.weights.assign(static_cast<std::size_t>(layer.d_in) * layer.d_out,
                             EntrySpec::fixed(0.0));
        for (int i = 0; i < layer.d_out; ++i) {
            layer.weight(i, 2 * i) = EntrySpec::free_at(next++);
            layer.weight(i, 2 * i + 1) = EntrySpec::free_at(next++);
        }
        layer.biases.resize(static_cast<std::size_t>(layer.d_out));
        for (auto& e : layer.biases) e = EntrySpec::free_at(next++);
        arch.layers.push_back(std::move(layer));
        w /= 2;
    }
    arch.output = {EntrySpec::free_at(next++)};
    arch.validate();
    return arch;
}

LocalizedNet localized_net(std::span<const double> lo, std::span<const double> hi,
                           double sharpness, const ActivationSpec& act) {
    if (!act.sigmoidal())
        throw UnsupportedError("localized_net requires a sigmoidal activation, got " + act.rule);
    if (lo.size() != hi.size() || lo.empty())
        throw ValidationError("box bounds must be nonempty and of equal dimension");
    if (!(sharpness > 0.0)) throw DomainError("sharpness must be positive");
    int d = static_cast<int>(lo.size());
    for (int j = 0; j < d; ++j) {
        if (!(lo[j] < hi[j])) throw ValidationError("box must satisfy lo < hi componentwise");
        if (std::abs(lo[j]) > 1.0 || std::abs(hi[j]) > 1.0)
            throw ValidationError("box must lie inside [-1,1]^d");
    }

    double K = sharpness;
    Architecture arch;
    arch.input_dim = d;
    arch.radius = std::max(1.0, 2.0 * d * K);

    LayerStructure first;
    first.d_in = d;
    first.d_out = 2 * d;
    first.activation = act;
    first.weights.assign(static_cast<std::size_t>(first.d_in) * first.d_out,
                         EntrySpec::fixed(0.0));
    first.biases.resize(static_cast<std::size_t>(first.d_out));
    for (int j = 0; j < d; ++j) {
        first.weight(2 * j, j) = EntrySpec::fixed(K); // s(K (x_j - lo_j))
        first.biases[static_cast<std::size_t>(2 * j)] = EntrySpec::fixed(-K * lo[j]);
        first.weight(2 * j + 1, j) = EntrySpec::fixed(-K); // s(K (hi_j - x_j))
        first.biases[static_cast<std::size_t>(2 * j + 1)] = EntrySpec::fixed(K * hi[j]);
    }

    LayerStructure second;
    second.d_in = 2 * d;
    second.d_out = 1;
    second.activation = act;
    second.weights.assign(static_cast<std::size_t>(second.d_in), EntrySpec::fixed(K));
    second.biases = {EntrySpec::fixed(-K * (2.0 * d - 0.5))};

    arch.layers = {std::move(first), std::move(second)};
    arch.output = {EntrySpec::free_at(0)};
    arch.validate();

    LocalizedNet net;
    net.arch = std::move(arch);
    net.params.values = {1.0};
    return net;
}

} // namespace netcap
