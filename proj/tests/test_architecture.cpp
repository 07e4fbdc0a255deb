#include <cmath>
#include <vector>

#include "doctest.h"

#include "netcap/architecture.hpp"
#include "netcap/errors.hpp"

using namespace netcap;

TEST_CASE("dense preset counts every entry once") {
    auto arch = dense_architecture({2, 3, 1}, logistic_activation());
    CHECK(arch.depth() == 2);
    CHECK(arch.input_dim == 2);
    // (2*3 + 3) + (3*1 + 1) + 1
    CHECK(arch.free_param_count() == 14);
    CHECK(arch.param_count() == 14);
    CHECK(arch.free_output_count() == 1);
    CHECK(dense_param_count({2, 3, 1}) == 14);
    CHECK(arch.max_width() == 3);
    CHECK(arch.width_product(1) == doctest::Approx(2.0));
    CHECK(arch.width_product(2) == doctest::Approx(6.0));
}

TEST_CASE("dense_param_count matches the chain formula") {
    CHECK(dense_param_count({1, 1}) == 3);
    CHECK(dense_param_count({1, 1, 1}) == 5);
    CHECK(dense_param_count({4, 5, 2}) == 39);
    CHECK_THROWS_AS((void)dense_param_count({3}), ValidationError);
}

TEST_CASE("free slot indices must be gap free") {
    auto arch = dense_architecture({1, 1}, logistic_activation());
    // Skip an index: slots become {0, 2, 3} with 1 missing.
    arch.layers[0].weights[0] = EntrySpec::free_at(3);
    CHECK_THROWS_WITH_AS(arch.validate(), doctest::Contains("missing"), ValidationError);
}

TEST_CASE("fixed entries outside the radius are rejected") {
    auto arch = dense_architecture({1, 1}, logistic_activation(), 1.0);
    arch.layers[0].weights[0] = EntrySpec::fixed(1.5);
    CHECK_THROWS_AS(arch.validate(), ValidationError);
}

TEST_CASE("evaluate matches a hand computation") {
    auto arch = dense_architecture({1, 1}, logistic_activation());
    // slots: weight, bias, output
    ParamAssignment p{{0.5, -0.25, 1.0}};
    double x = 0.8;
    double pre = 0.5 * x - 0.25;
    double expected = 1.0 / (1.0 + std::exp(-pre));
    std::vector<double> xs{x};
    CHECK(arch.evaluate(p, xs) == doctest::Approx(expected).epsilon(1e-12));

    auto hidden = arch.layer_outputs(p, xs);
    REQUIRE(hidden.size() == 1);
    REQUIRE(hidden[0].size() == 1);
    CHECK(hidden[0][0] == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("check_params enforces size and radius") {
    auto arch = dense_architecture({1, 1}, logistic_activation(), 1.0);
    CHECK_THROWS_AS(arch.check_params(ParamAssignment{{0.1, 0.2}}), ValidationError);
    CHECK_THROWS_AS(arch.check_params(ParamAssignment{{0.1, 0.2, 7.0}}), DomainError);
    CHECK_NOTHROW(arch.check_params(ParamAssignment{{0.1, 0.2, 0.3}}));
}

TEST_CASE("toeplitz preset shares kernel and bias slots") {
    auto arch = toeplitz1d_architecture(4, 3, 2, relu_activation());
    // per layer: 3 kernel slots + 1 shared bias; output row is dense
    CHECK(arch.layers[0].free_weight_count() == 3);
    CHECK(arch.layers[0].free_bias_count() == 1);
    CHECK(arch.free_param_count() == 2 * 4 + 4);
    CHECK(arch.param_count() == 2 * 4 + 4);

    // band structure: entry (0, 3) is outside a width-3 kernel
    CHECK_FALSE(arch.layers[0].weight(0, 3).is_free());
    CHECK(arch.layers[0].weight(0, 3).value == 0.0);

    // the same diagonal uses the same slot
    CHECK(arch.layers[0].weight(1, 1).index == arch.layers[0].weight(2, 2).index);
}

TEST_CASE("tree preset wires children pairs only") {
    auto arch = tree_architecture(2, logistic_activation());
    CHECK(arch.input_dim == 4);
    CHECK(arch.depth() == 2);
    // layer 1: 2 nodes * (2 weights + 1 bias); layer 2: 1 node * 3; output 1
    CHECK(arch.free_param_count() == 6 + 3 + 1);
    CHECK(arch.layers[0].weight(0, 2).is_free() == false);
    CHECK(arch.layers[0].weight(1, 2).is_free() == true);
}

TEST_CASE("architectures survive a json round trip") {
    auto arch = toeplitz1d_architecture(3, 3, 1, tanh_sigmoid_activation(), 2.0);
    auto j = architecture_to_json(arch);
    auto back = architecture_from_json(j);
    CHECK(back.input_dim == arch.input_dim);
    CHECK(back.radius == arch.radius);
    CHECK(back.free_param_count() == arch.free_param_count());
    CHECK(back.param_count() == arch.param_count());

    ParamAssignment p{std::vector<double>(static_cast<std::size_t>(arch.param_count()), 0.3)};
    std::vector<double> x{0.2, -0.4, 0.9};
    CHECK(back.evaluate(p, x) == doctest::Approx(arch.evaluate(p, x)).epsilon(1e-12));
}

TEST_CASE("preset shorthand json builds the same net") {
    nlohmann::json j = {{"preset", "dense"},
                        {"widths", {2, 3, 1}},
                        {"activation", "logistic"},
                        {"radius", 1.0}};
    auto arch = architecture_from_json(j);
    CHECK(arch.free_param_count() == 14);
    CHECK(arch.layers[0].activation.rule == "logistic");
}

TEST_CASE("uniform output bound is the stage product") {
    auto arch = dense_architecture({1, 1, 1}, logistic_activation(), 1.0);
    // logistic: c = 1, d = 1 (bias adds one) -> stage factor (1+2^2)*1 = 5
    CHECK(uniform_output_bound(arch, 1) == doctest::Approx(5.0));
    CHECK(uniform_output_bound(arch, 2) == doctest::Approx(25.0));
    CHECK_THROWS_AS((void)uniform_output_bound(arch, 0), DomainError);
    CHECK_THROWS_AS((void)uniform_output_bound(arch, 3), DomainError);
}

TEST_CASE("localized nets require sigmoidal activations") {
    std::vector<double> lo{-0.5}, hi{0.5};
    CHECK_THROWS_AS((void)localized_net(lo, hi, 100.0, relu_activation()), UnsupportedError);

    auto net = localized_net(lo, hi, 1000.0, logistic_activation());
    CHECK(net.arch.input_dim == 1);
    CHECK(net.arch.depth() == 2);
    CHECK(net.arch.layers[0].d_out == 2);
    CHECK(net.arch.layers[1].d_out == 1);

    std::vector<double> inside{0.0}, outside{0.9};
    CHECK(net.arch.evaluate(net.params, inside) == doctest::Approx(1.0).epsilon(0.01));
    CHECK(net.arch.evaluate(net.params, outside) == doctest::Approx(0.0).epsilon(0.01));
}
