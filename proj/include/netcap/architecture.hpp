#pragma once

#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "netcap/activation.hpp"

namespace netcap {

// One matrix/bias/output entry: either a frozen constant or a reference to a
// slot of the shared free-parameter vector. Shared slots (the same index in
// several entries) express weight tying.
struct EntrySpec {
    double value = 0.0; // meaningful when index < 0
    int index = -1;     // >= 0 selects a free-parameter slot

    bool is_free() const { return index >= 0; }

    static EntrySpec fixed(double v) { return EntrySpec{v, -1}; }
    static EntrySpec free_at(int i) { return EntrySpec{0.0, i}; }
};

struct LayerStructure {
    int d_in = 0;
    int d_out = 0;
    std::vector<EntrySpec> weights; // row-major, d_out x d_in
    std::vector<EntrySpec> biases;  // d_out
    ActivationSpec activation;

    const EntrySpec& weight(int row, int col) const {
        return weights[static_cast<std::size_t>(row) * d_in + col];
    }
    EntrySpec& weight(int row, int col) {
        return weights[static_cast<std::size_t>(row) * d_in + col];
    }

    // Distinct free slots referenced by this layer's weights / biases.
    int free_weight_count() const;
    int free_bias_count() const;
};

// Values for the free-parameter vector, one per distinct slot.
struct ParamAssignment {
    std::vector<double> values;
};

// A structured feed-forward network on the cube [-1,1]^input_dim with scalar
// output: the output row combines the last hidden layer linearly. All entries
// (fixed values and admissible free values alike) live in [-radius, radius].
struct Architecture {
    int input_dim = 0;
    double radius = 1.0;
    std::vector<LayerStructure> layers;
    std::vector<EntrySpec> output; // size = last layer's d_out

    int depth() const { return static_cast<int>(layers.size()); }

    // Throws ValidationError on dimension mismatches, free-index gaps,
    // fixed entries outside [-radius, radius], or radius < 1.
    void validate() const;

    // Per-block sum of distinct free slots (weights + biases per layer, plus
    // the output row). A slot shared across blocks is counted once per block.
    int free_param_count() const;

    // Size of the free-parameter vector: number of distinct slots overall.
    int param_count() const;

    int free_output_count() const;

    int max_width() const;           // max over d_0..d_L
    double width_product(int l) const; // d_{l-1} * ... * d_0, in [1, ...], l >= 1

    void check_params(const ParamAssignment& params) const;

    double evaluate(const ParamAssignment& params, std::span<const double> x) const;

    // Hidden vectors h_1 .. h_L at x (post-activation).
    std::vector<std::vector<double>> layer_outputs(const ParamAssignment& params,
                                                   std::span<const double> x) const;

    // Materialized layer matrix/bias under a parameter assignment.
    std::vector<double> weight_matrix(int layer, const ParamAssignment& params) const;
    std::vector<double> bias_vector(int layer, const ParamAssignment& params) const;
    std::vector<double> output_vector(const ParamAssignment& params) const;
};

// Fully-connected parameter count for a width chain (d_0, d_1, ..., d_L):
// d_L + sum_k (d_{k-1} d_k + d_k). Needs at least two widths.
long long dense_param_count(const std::vector<int>& widths);

// Largest L1 norm any component of the layer-l hidden vector can attain over
// the cube, for parameters within the radius: (c (1 + 2^{d+1}) R)^l * d_{l-1}...d_0
// with c the largest growth constant among layers 1..l.
double uniform_output_bound(const Architecture& arch, int l);

// ---- presets ----------------------------------------------------------

// Every weight, bias and output entry is a distinct free slot.
Architecture dense_architecture(const std::vector<int>& widths,
                                const ActivationSpec& act, double radius = 1.0);

// Banded convolution layers with a shared kernel: layer width stays `width`,
// kernel entries are shared along diagonals (kernel_size slots per layer) and
// one shared bias slot per layer; entries outside the band are fixed zeros.
Architecture toeplitz1d_architecture(int width, int kernel_size, int n_layers,
                                     const ActivationSpec& act, double radius = 1.0);

// Binary-tree reduction: 2^depth inputs, each layer halves the width and node
// j reads only children 2j, 2j+1 (free), all other entries fixed zero.
Architecture tree_architecture(int depth, const ActivationSpec& act,
                               double radius = 1.0);

// ---- indicator approximation ------------------------------------------

// Two-hidden-layer net with 2d+1 sigmoidal neurons approximating the
// indicator of the box [lo_1,hi_1] x ... x [lo_d,hi_d]: per coordinate the
// first layer fires s(K(x_j - lo_j)) and s(K(hi_j - x_j)), the second layer
// thresholds their sum at 2d - 1/2 with the same sharpness K.
// Throws UnsupportedError unless the activation is sigmoidal.
struct LocalizedNet {
    Architecture arch;
    ParamAssignment params;
};
LocalizedNet localized_net(std::span<const double> lo, std::span<const double> hi,
                           double sharpness, const ActivationSpec& act);

// ---- serialization ------------------------------------------------------

nlohmann::json architecture_to_json(const Architecture& arch);

// Accepts either the full schema or a preset shorthand
// ({"preset":"dense","widths":[...],...}). Validates before returning.
Architecture architecture_from_json(const nlohmann::json& j);

Architecture load_architecture(const std::string& path);

} // namespace netcap
