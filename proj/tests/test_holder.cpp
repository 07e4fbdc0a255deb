#include <cmath>
#include <vector>

#include "doctest.h"

#include "netcap/errors.hpp"
#include "netcap/holder.hpp"

using namespace netcap;

TEST_CASE("smoothness orders split into integer and fractional parts") {
    auto a = split_smoothness(1.0);
    CHECK(a.s == 0);
    CHECK(a.v == doctest::Approx(1.0));
    auto b = split_smoothness(2.0);
    CHECK(b.s == 1);
    CHECK(b.v == doctest::Approx(1.0));
    auto c = split_smoothness(1.5);
    CHECK(c.s == 1);
    CHECK(c.v == doctest::Approx(0.5));
    auto d = split_smoothness(0.25);
    CHECK(d.s == 0);
    CHECK(d.v == doctest::Approx(0.25));
    CHECK_THROWS_AS((void)split_smoothness(0.0), DomainError);
    CHECK_THROWS_AS((void)split_smoothness(-1.0), DomainError);
}

TEST_CASE("identity passes a lipschitz check with matching budget") {
    FunctionHandle f{"x", 1, [](std::span<const double> x) { return x[0]; }};
    auto rep = holder_check(f, 1.0, 1.0, 500);
    CHECK(rep.pass);
    CHECK(rep.max_ratio == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(rep.pairs_checked == 500);
    CHECK(rep.s == 0);
}

TEST_CASE("a too small budget is reported with a witness pair") {
    FunctionHandle f{"2x", 1, [](std::span<const double> x) { return 2.0 * x[0]; }};
    auto rep = holder_check(f, 1.0, 1.0, 500);
    CHECK_FALSE(rep.pass);
    CHECK(rep.max_ratio == doctest::Approx(2.0).epsilon(1e-6));
    REQUIRE(rep.witness_x.size() == 1);
    REQUIRE(rep.witness_y.size() == 1);
    CHECK(rep.witness_x[0] != rep.witness_y[0]);
}

TEST_CASE("order two checks difference the first derivative") {
    // f = x^2: f' = 2x is 2-lipschitz, so r = 2 with c0 = 2 passes and
    // c0 = 1 fails.
    FunctionHandle f{"x^2", 1, [](std::span<const double> x) { return x[0] * x[0]; }};
    auto ok = holder_check(f, 2.0, 2.0, 500);
    CHECK(ok.pass);
    CHECK(ok.s == 1);
    CHECK(ok.max_ratio == doctest::Approx(2.0).epsilon(1e-4));
    auto bad = holder_check(f, 2.0, 1.0, 500);
    CHECK_FALSE(bad.pass);
}

TEST_CASE("fractional orders bound the holder quotient") {
    // f = |x|^(1/2) has holder quotient exactly 1 at order 1/2 (worst pair
    // straddles the kink).
    FunctionHandle f{"sqrt-abs", 1,
                     [](std::span<const double> x) { return std::sqrt(std::abs(x[0])); }};
    auto rep = holder_check(f, 0.5, 1.0, 4000);
    CHECK(rep.max_ratio <= 1.0 + 1e-9);
    CHECK(rep.pass);
}

TEST_CASE("multivariate pairs use the euclidean distance") {
    // gradient (1,1)/sqrt(2) has unit norm: ratios approach 1 from below as
    // sampled directions near the gradient, and never exceed it
    FunctionHandle f{"sum", 2,
                     [](std::span<const double> x) { return (x[0] + x[1]) / std::sqrt(2.0); }};
    auto rep = holder_check(f, 1.0, 1.0, 2000);
    CHECK(rep.pass);
    CHECK(rep.max_ratio <= 1.0 + 1e-9);
    CHECK(rep.max_ratio > 0.9);
}

TEST_CASE("caller supplied pairs are honored verbatim") {
    FunctionHandle f{"x", 1, [](std::span<const double> x) { return x[0]; }};
    std::vector<PointPair> pairs{{{-0.5}, {0.5}}, {{0.1}, {0.100001}}};
    auto rep = holder_check_pairs(f, 1.0, 1.0, pairs);
    CHECK(rep.pairs_checked == 2);
    CHECK(rep.pass);
    CHECK(rep.max_ratio == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("parameter guards reject nonsense") {
    FunctionHandle f{"x", 1, [](std::span<const double> x) { return x[0]; }};
    CHECK_THROWS_AS((void)holder_check(f, 1.0, 1.0, 100, 0.0), DomainError);
    CHECK_THROWS_AS((void)holder_check(f, 1.0, 1.0, 100, 0.05), DomainError);
    CHECK_THROWS_AS((void)holder_check(f, 1.0, 0.0, 100), DomainError);
    CHECK_THROWS_AS((void)holder_check(f, 3.5, 1.0, 100), GuardError); // s = 3 unsupported
}
