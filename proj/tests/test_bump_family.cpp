#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"

#include "netcap/bump.hpp"
#include "netcap/errors.hpp"
#include "netcap/hard_family.hpp"

using namespace netcap;

TEST_CASE("bump profile hits plateau, shoulder and support exactly") {
    auto bump = make_bump(1, 1.0, 8.0);
    CHECK(bump.shoulder_p == 1);
    CHECK(bump.profile(0.0) == 1.0);
    CHECK(bump.profile(0.5) == 1.0);
    CHECK(bump.profile(-0.5) == 1.0);
    CHECK(bump.profile(1.0) == 0.0);
    CHECK(bump.profile(-1.2) == 0.0);
    // smoothstep S_1(t) = 3t^2 - 2t^3 at the shoulder midpoint u = 3/4,
    // t = 2(1 - u) = 1/2
    CHECK(bump.profile(0.75) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(bump.profile(-0.75) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("higher orders use higher degree shoulders") {
    auto b2 = make_bump(1, 2.0, 64.0);
    CHECK(b2.shoulder_p == 2);
    // S_2(t) = 10t^3 - 15t^4 + 6t^5, value 1/2 at t = 1/2
    CHECK(b2.profile(0.75) == doctest::Approx(0.5).epsilon(1e-14));
    auto frac = make_bump(1, 0.5, 4.0);
    CHECK(frac.shoulder_p == 1); // ceil(0.5)
    CHECK(frac.s == 0);
    CHECK(frac.v == doctest::Approx(0.5));
}

TEST_CASE("tensor bump has the advertised plateau and support") {
    auto bump = make_bump(2, 1.0, 32.0);
    double ph = bump.plateau_halfwidth();
    double sh = bump.support_halfwidth();
    CHECK(ph == doctest::Approx(0.5 / std::sqrt(2.0)));
    CHECK(sh == doctest::Approx(1.0 / std::sqrt(2.0)));

    std::vector<double> corner{ph, ph};
    CHECK(bump.value(corner) == 1.0);
    std::vector<double> outside{sh + 1e-9, 0.0};
    CHECK(bump.value(outside) == 0.0);
    std::vector<double> mid{0.75 / std::sqrt(2.0), 0.0};
    CHECK(bump.value(mid) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("l1 norm of the bump is closed form") {
    auto bump = make_bump(1, 1.0, 8.0);
    CHECK(bump.shoulder_integral() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(bump.l1_norm() == doctest::Approx(1.5).epsilon(1e-15));

    auto grid = QuadratureGrid::make(1, 512, QuadScheme::MidpointTensor);
    auto quad = l1_norm(bump.as_function(), grid);
    CHECK(quad.value == doctest::Approx(bump.l1_norm()).epsilon(1e-4));

    auto b2 = make_bump(2, 1.5, 64.0);
    CHECK(b2.l1_norm() == doctest::Approx(std::pow(1.5 / std::sqrt(2.0), 2)).epsilon(1e-15));
    auto grid2 = QuadratureGrid::make(2, 128, QuadScheme::MidpointTensor);
    auto quad2 = l1_norm(b2.as_function(), grid2);
    CHECK(quad2.value == doctest::Approx(b2.l1_norm()).epsilon(1e-3));
}

TEST_CASE("analytic partials match finite differences") {
    auto bump = make_bump(2, 2.0, 64.0);
    std::vector<double> x{0.55, -0.6};
    std::vector<int> dx{1, 0};
    double h = 1e-6;
    std::vector<double> xp{x[0] + h, x[1]}, xm{x[0] - h, x[1]};
    double fd = (bump.value(xp) - bump.value(xm)) / (2.0 * h);
    CHECK(bump.partial(x, dx) == doctest::Approx(fd).epsilon(1e-5));
    CHECK_THROWS_AS((void)bump.partial(x, std::vector<int>{3, 0}), GuardError);
}

TEST_CASE("undersized class constants are rejected with a remedy") {
    // in d = 1 at r = 1 the profile slope reaches 3 (after the chain factor),
    // so the budget c0 * 2^{v-1} = c0 needs c0 >= ~3 given slack
    CHECK_THROWS_AS((void)make_bump(1, 1.0, 1.0), ConstructionError);
    try {
        (void)make_bump(1, 1.0, 1.0);
    } catch (const ConstructionError& e) {
        CHECK(std::string(e.what()).find("c0") != std::string::npos);
    }
    CHECK_NOTHROW((void)make_bump(1, 1.0, 8.0));
}

TEST_CASE("grid partition tiles the cube") {
    GridPartition part{3, 2};
    CHECK(part.cell_count() == 9);
    CHECK(part.side() == doctest::Approx(2.0 / 3.0));

    auto c0 = part.center(0);
    CHECK(c0[0] == doctest::Approx(-2.0 / 3.0));
    CHECK(c0[1] == doctest::Approx(-2.0 / 3.0));
    auto c8 = part.center(8);
    CHECK(c8[0] == doctest::Approx(2.0 / 3.0));
    CHECK(c8[1] == doctest::Approx(2.0 / 3.0));

    // round trip: each center indexes back to its own cell
    for (std::size_t k = 0; k < part.cell_count(); ++k) {
        auto idx = part.cell_index(part.center(k));
        REQUIRE(idx.has_value());
        CHECK(*idx == k);
    }

    std::vector<double> outside{1.5, 0.0};
    CHECK_FALSE(part.cell_index(outside).has_value());
    std::vector<double> corner{1.0, 1.0};
    auto far = part.cell_index(corner);
    REQUIRE(far.has_value());
    CHECK(*far == 8);
}

TEST_CASE("family members scale like n_star^{-r}") {
    auto bump = make_bump(1, 1.0, 8.0);
    auto family = build_family(4, bump);
    CHECK(family.partition.n_star == 4);
    CHECK(family.scale() == doctest::Approx(0.25));

    // at a cell center the member value is the word symbol times the scale
    auto word = family.code.words[1];
    auto center = family.partition.center(2);
    double got = family.member_value(word, center);
    CHECK(std::abs(got) == doctest::Approx(family.scale()).epsilon(1e-14));
    CHECK(got == doctest::Approx(word[2] * family.scale()).epsilon(1e-14));
}

TEST_CASE("negating a word negates the member") {
    auto bump = make_bump(1, 1.0, 8.0);
    auto family = build_family(2, bump);
    std::vector<std::int8_t> plus{1, 1}, minus{-1, -1};
    auto f = family.member_from_word(plus, "f");
    auto g = family.member_from_word(minus, "g");
    for (double x : {-0.9, -0.5, 0.2, 0.77}) {
        std::vector<double> xs{x};
        CHECK(f(xs) == doctest::Approx(-g(xs)).epsilon(1e-15));
    }
}

TEST_CASE("closed form distances match quadrature") {
    auto bump = make_bump(1, 1.0, 8.0);
    auto family = build_family(2, bump);
    REQUIRE(family.size() >= 2);

    auto grid = QuadratureGrid::make(1, 256, QuadScheme::MidpointTensor);
    auto quad = l1_distance(family.member(0), family.member(1), grid);
    double exact = family.closed_form_distance(0, 1);
    CHECK(quad.value == doctest::Approx(exact).epsilon(1e-3));

    // n_star^{-r-d} ||g||_1 sum |delta w|
    double expected = std::pow(2.0, -2.0) * bump.l1_norm() * family.code.l1(0, 1);
    CHECK(exact == doctest::Approx(expected).epsilon(1e-15));
}

TEST_CASE("localization sees at most one active copy per point") {
    auto bump = make_bump(2, 1.0, 32.0);
    auto family = build_family(3, bump, 0, 64);
    auto rep = verify_localization(family, 10000, 0);
    CHECK(rep.pass);
    CHECK(rep.max_overlapping <= 1);
    CHECK(rep.centers_hit);
    CHECK(rep.samples == 10000);
}

TEST_CASE("membership audit passes with the constructed budget") {
    auto bump = make_bump(1, 1.0, 8.0);
    auto family = build_family(2, bump);
    auto rep = verify_class_membership(family, 4, 400, 0);
    CHECK(rep.pass);
    CHECK(rep.c0 == doctest::Approx(8.0));
    CHECK(rep.pairs_checked > 0);
}

TEST_CASE("separation audit meets the closed form and the lower bound") {
    auto bump = make_bump(1, 1.0, 8.0);
    auto family = build_family(2, bump);
    auto rep = verify_separation(family, 20, 64);
    CHECK(rep.pass);
    CHECK(rep.separation_pass);
    CHECK(rep.closed_form_pass);
    CHECK(rep.bound == doctest::Approx(0.25)); // (1/2) * 1 * 2^{-1}
    CHECK(rep.min_distance >= rep.bound - rep.max_est_tolerance);
    CHECK(rep.pairs_checked >= 1);
}

TEST_CASE("grid resolution choice follows the frozen example") {
    auto pick = choose_nstar(4, 1.0, 1, 0.0, 1.0, 10.0);
    // arg = 2 + 8 * (1 + 3 + 10) + n = 118
    CHECK(pick.log2_argument == doctest::Approx(118.0).epsilon(1e-15));
    CHECK(pick.required_cells == doctest::Approx(std::ceil(512.0 * std::log2(118.0))));
    CHECK(pick.n_star == 3524);

    // d-th root: in dimension 2 the same cell budget needs only its root
    auto flat = choose_nstar(4, 2.0, 2, 0.0, 1.0, 10.0);
    double cells = flat.required_cells;
    CHECK(flat.n_star == static_cast<long long>(std::ceil(std::sqrt(cells))));
    CHECK(static_cast<double>(flat.n_star) * flat.n_star >= cells);
    CHECK(static_cast<double>(flat.n_star - 1) * (flat.n_star - 1) < cells);

    CHECK_THROWS_AS((void)choose_nstar(0, 1.0, 1, 0.0, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS((void)choose_nstar(4, -1.0, 1, 0.0, 1.0, 1.0), DomainError);
}

TEST_CASE("oversized grids are refused") {
    GridPartition part{2000, 2}; // 4e6 cells > guard
    CHECK_THROWS_AS((void)part.cell_count(), GuardError);
    auto bump = make_bump(1, 1.0, 8.0);
    CHECK_THROWS_AS((void)build_family(1 << 21, bump), GuardError);
}
