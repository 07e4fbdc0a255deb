#include <cmath>
#include <vector>

#include "doctest.h"

#include "netcap/capacity.hpp"
#include "netcap/errors.hpp"

using namespace netcap;

TEST_CASE("constant ledger in dimension one and two") {
    auto one = constant_ledger(1.0, 1.0, 1);
    CHECK(one.c1_prime == doctest::Approx(30.0).epsilon(1e-15));
    CHECK(one.c2_prime == doctest::Approx(10.0).epsilon(1e-15));
    CHECK(one.c3 == doctest::Approx(60.0).epsilon(1e-15));

    auto two = constant_ledger(1.0, 1.0, 2);
    CHECK(two.c1_prime == doctest::Approx(54.0).epsilon(1e-15));
    CHECK(two.c2_prime == doctest::Approx(18.0).epsilon(1e-15));
    CHECK(two.c3 == doctest::Approx(108.0).epsilon(1e-15));

    CHECK_THROWS_AS((void)constant_ledger(0.5, 1.0, 1), DomainError); // c >= 1
    CHECK_THROWS_AS((void)constant_ledger(1.0, 0.0, 1), DomainError);
    CHECK_THROWS_AS((void)constant_ledger(1.0, 1.0, 0), DomainError);
}

TEST_CASE("ledger_for picks the worst layer constants") {
    auto arch = dense_architecture({1, 1, 1}, logistic_activation());
    auto led = ledger_for(arch);
    CHECK(led.c1 == doctest::Approx(0.25)); // logistic slope peak
    CHECK(led.d == 1);
}

TEST_CASE("matrix net size counts grid bits per free entry") {
    // 4 free entries, 2*d_out*d_in*R/eps = 2*2*3*1/0.5 = 24
    CHECK(matrix_net_size(2, 3, 4, 1.0, 0.5) == doctest::Approx(4.0 * std::log2(24.0)).epsilon(1e-15));
    // single point suffices once eps swallows the whole range
    CHECK(matrix_net_size(2, 3, 4, 1.0, 100.0) == 0.0);
    CHECK(matrix_net_size(2, 3, 0, 1.0, 0.5) == 0.0);
    CHECK_THROWS_AS((void)matrix_net_size(2, 3, 4, 1.0, 0.0), DomainError);
}

TEST_CASE("layer recursion collapses to the matrix net at depth one") {
    auto arch = dense_architecture({1, 1}, logistic_activation());
    auto led = ledger_for(arch);
    // base layer: F_1 log2(c1' R D_1 / eps); F_1 = 2 (weight + bias),
    // c1' = 6*0.25*1*5 = 7.5, D_1 = 1, eps = 0.25
    double expected = 2.0 * std::log2(led.c1_prime / 0.25);
    CHECK(layer_recursion_bound(arch, 1, 0.25) == doctest::Approx(expected).epsilon(1e-12));

    // a laughably large eps clamps to zero, never negative
    CHECK(layer_recursion_bound(arch, 1, 1e9) == 0.0);
}

TEST_CASE("layer recursion grows with depth and shrinking eps") {
    auto arch = dense_architecture({1, 2, 1}, logistic_activation());
    double a = layer_recursion_bound(arch, 1, 0.5);
    double b = layer_recursion_bound(arch, 2, 0.5);
    double c = layer_recursion_bound(arch, 2, 0.25);
    CHECK(a >= 0.0);
    CHECK(b >= a);
    CHECK(c >= b);
}

TEST_CASE("network covering bound reproduces the frozen example") {
    // depth 2, all widths 1, logistic grown to worst constants c = c1 = 1:
    // use explicit inputs so the ledger is exactly (1,1,1).
    auto led = constant_ledger(1.0, 1.0, 1);
    auto bound = covering_bound_from_inputs(5, 2, 1.0, 1.0, 1.0, led, 1.0);
    // (L+1) n [(L+1) log2(c3 R) + 3 log2 D_L] = 3*5*(3*log2 60) = 45 log2 60
    CHECK(bound.log2_tight == doctest::Approx(45.0 * std::log2(60.0)).epsilon(1e-12));
    CHECK(bound.log2_relaxed >= bound.log2_tight);
    // relaxed: 3*(L+1)^2*n*log2(c3 R dmax) = 27*5*log2(60)
    CHECK(bound.log2_relaxed == doctest::Approx(135.0 * std::log2(60.0)).epsilon(1e-12));
}

TEST_CASE("halving epsilon costs exactly n more bits on the tight bound") {
    auto led = constant_ledger(1.0, 1.0, 1);
    auto a = covering_bound_from_inputs(5, 2, 1.0, 1.0, 1.0, led, 0.5);
    auto b = covering_bound_from_inputs(5, 2, 1.0, 1.0, 1.0, led, 0.25);
    CHECK(b.log2_tight - a.log2_tight == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(b.log2_relaxed - a.log2_relaxed == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("bounds are monotone in every size knob") {
    auto led = constant_ledger(1.0, 1.0, 1);
    auto base = covering_bound_from_inputs(5, 2, 1.0, 2.0, 2.0, led, 0.5);
    CHECK(covering_bound_from_inputs(6, 2, 1.0, 2.0, 2.0, led, 0.5).log2_tight > base.log2_tight);
    CHECK(covering_bound_from_inputs(5, 3, 1.0, 2.0, 2.0, led, 0.5).log2_tight > base.log2_tight);
    CHECK(covering_bound_from_inputs(5, 2, 2.0, 2.0, 2.0, led, 0.5).log2_tight > base.log2_tight);
    CHECK(covering_bound_from_inputs(5, 2, 1.0, 2.0, 4.0, led, 0.5).log2_tight > base.log2_tight);
    CHECK(covering_bound_from_inputs(5, 2, 1.0, 4.0, 2.0, led, 0.5).log2_relaxed > base.log2_relaxed);
}

TEST_CASE("network bound wires the architecture numbers through") {
    auto arch = dense_architecture({1, 1, 1}, logistic_activation());
    auto bound = network_covering_bound(arch, 0.5);
    CHECK(bound.n == 5);
    CHECK(bound.L == 2);
    CHECK(bound.d_prod == doctest::Approx(1.0));
    auto direct = covering_bound_from_inputs(5, 2, 1.0, 1.0, 1.0, ledger_for(arch), 0.5);
    CHECK(bound.log2_tight == doctest::Approx(direct.log2_tight).epsilon(1e-15));
}

TEST_CASE("interval nets cover the admissible range") {
    auto half = build_interval_net(1.0, 0.5);
    REQUIRE(half.size() == 2);
    CHECK(half[0] == doctest::Approx(-0.5));
    CHECK(half[1] == doctest::Approx(0.5));

    auto whole = build_interval_net(1.0, 1.0);
    REQUIRE(whole.size() == 1);
    CHECK(whole[0] == doctest::Approx(0.0));

    auto fine = build_interval_net(1.0, 0.2);
    REQUIRE(fine.size() == 5);
    for (double x = -1.0; x <= 1.0; x += 0.01) {
        double best = 1e300;
        for (double c : fine) best = std::min(best, std::abs(x - c));
        CHECK(best <= 0.2 + 1e-12);
    }

    CHECK_THROWS_AS((void)build_interval_net(1.0, 0.0), DomainError);
    CHECK_THROWS_AS((void)build_interval_net(1.0, 3.0), DomainError);
}

TEST_CASE("sensitivities bound the reachable function change") {
    auto arch = dense_architecture({1, 1}, logistic_activation());
    auto sens = parameter_sensitivity(arch);
    REQUIRE(sens.per_param.size() == 3);
    for (double s : sens.per_param) CHECK(s > 0.0);
    REQUIRE(sens.layers.size() == 1);
    CHECK(sens.layers[0].bias_factor == doctest::Approx(2.0 * 0.25)); // 2^d * c1
    CHECK(sens.output_factor == doctest::Approx(uniform_output_bound(arch, 1)));
}

TEST_CASE("enumerated nets are certified and validated") {
    auto arch = dense_architecture({1, 1}, logistic_activation());
    auto net = enumerate_epsilon_net(arch, 0.75);
    CHECK(net.epsilon == doctest::Approx(0.75));
    CHECK(net.certified_radius <= 0.75 + 1e-12);
    REQUIRE(net.param_grids.size() == 3);
    CHECK_FALSE(net.points.empty());

    auto grid = QuadratureGrid::make(1, 32);
    auto val = validate_epsilon_net(arch, net, 200, grid, 1);
    CHECK(val.pass);
    CHECK(val.draws == 200);
    CHECK(val.max_observed_distance <= net.epsilon + val.max_est_tolerance + 1e-12);
}

TEST_CASE("epsilon net guards refuse oversized enumerations") {
    auto big = dense_architecture({2, 3, 1}, logistic_activation()); // 14 slots
    CHECK_THROWS_AS((void)enumerate_epsilon_net(big, 0.5), GuardError);

    auto arch = dense_architecture({1, 1}, logistic_activation());
    CHECK_THROWS_AS((void)enumerate_epsilon_net(arch, 1e-9), GuardError);
}

TEST_CASE("packing reports never exceed the tight bound on tiny nets") {
    auto arch = dense_architecture({1, 1}, logistic_activation());
    std::vector<ParamAssignment> samples;
    for (double w : {-1.0, 0.0, 1.0})
        for (double b : {-1.0, 1.0})
            for (double a : {-1.0, 1.0}) samples.push_back(ParamAssignment{{w, b, a}});
    auto grid = QuadratureGrid::make(1, 32);
    auto rep = packing_vs_bound_report(arch, 0.25, samples, grid);
    CHECK(rep.sample_count == 12);
    CHECK(rep.packing_count >= 1);
    CHECK_FALSE(rep.violation);
    CHECK(rep.log2_packing <= rep.log2_tight);

    // deterministic: same inputs, same counts
    auto rep2 = packing_vs_bound_report(arch, 0.25, samples, grid);
    CHECK(rep2.packing_count == rep.packing_count);
}
