#include <cmath>
#include <vector>

#include "doctest.h"

#include "netcap/errors.hpp"
#include "netcap/lower_bounds.hpp"

using namespace netcap;

namespace {

RelationInputs frozen_relation() {
    RelationInputs in;
    in.c1_tilde = 1.0;
    in.c2_tilde = 10.0;
    in.beta = 0.0;
    in.n = 4;
    in.r = 1.0;
    in.d = 1;
    return in;
}

} // namespace

TEST_CASE("relation bound constant matches the hand derivation") {
    auto cert = relation_lower_bound(frozen_relation());
    CHECK(cert.kind == "relation");
    // load = 1 + 0 + 3 = 4; arg = 2 + 8 (4 + 10) = 114
    CHECK(cert.smoothness_load == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(cert.log2_argument == doctest::Approx(114.0).epsilon(1e-15));
    double bracket = 128.0 * (std::log2(114.0) + 1.0);
    CHECK(cert.bracket == doctest::Approx(bracket).epsilon(1e-15));
    double cprime = 0.25 / bracket;
    CHECK(cert.constant == doctest::Approx(cprime).epsilon(1e-12));
    double complexity = 4.0 * std::log2(5.0);
    CHECK(cert.complexity == doctest::Approx(complexity).epsilon(1e-15));
    CHECK(cert.value == doctest::Approx(cprime / complexity).epsilon(1e-12));
    CHECK(cert.exponent == doctest::Approx(-1.0));
    CHECK(cert.n_star == 3524);
}

TEST_CASE("relation bound is reproducible bit for bit") {
    auto a = relation_lower_bound(frozen_relation());
    auto b = relation_lower_bound(frozen_relation());
    CHECK(a.value == b.value);
    CHECK(a.constant == b.constant);
    CHECK(a.complexity == b.complexity);
}

TEST_CASE("deep net bound constant matches the hand derivation") {
    auto led = constant_ledger(1.0, 1.0, 1);
    auto cert = deep_net_lower_bound(16, 2, 1.0, 2.0, 1.0, 1, led);
    CHECK(cert.kind == "deep-net");
    CHECK(cert.c3 == doctest::Approx(60.0));
    CHECK(cert.log2_argument == doctest::Approx(2880.0).epsilon(1e-15));
    double bracket = 512.0 * (std::log2(2880.0) + 1.0);
    CHECK(cert.bracket == doctest::Approx(bracket).epsilon(1e-15));
    double cbar = 0.5 / bracket;
    CHECK(cert.cbar1_prime == doctest::Approx(cbar).epsilon(1e-12));
    CHECK(cert.constant == doctest::Approx(cbar / 3.0).epsilon(1e-12));
    // complexity = L^2 n log2(n) log2(R d_max) = 4 * 16 * 4 * 1
    CHECK(cert.complexity == doctest::Approx(256.0).epsilon(1e-15));
    CHECK(cert.value == doctest::Approx((cbar / 3.0) / 256.0).epsilon(1e-12));
}

TEST_CASE("depth enters the deep net bound quadratically") {
    auto led = constant_ledger(1.0, 1.0, 1);
    auto shallow = deep_net_lower_bound(64, 1, 1.0, 2.0, 1.0, 1, led);
    auto deep = deep_net_lower_bound(64, 4, 1.0, 2.0, 1.0, 1, led);
    CHECK(shallow.value / deep.value == doctest::Approx(16.0).epsilon(1e-12));

    auto rough = deep_net_lower_bound(64, 1, 1.0, 2.0, 2.0, 2, led);
    auto fine = deep_net_lower_bound(64, 4, 1.0, 2.0, 2.0, 2, led);
    CHECK(rough.value / fine.value == doctest::Approx(16.0).epsilon(1e-12)); // 16^{r/d} = 16
}

TEST_CASE("deep net bound decreases strictly in n") {
    auto led = constant_ledger(1.0, 1.0, 1);
    double prev = 1e300;
    for (long long n : {4, 8, 16, 32, 64}) {
        auto cert = deep_net_lower_bound(n, 2, 1.0, 2.0, 1.0, 1, led);
        CHECK(cert.value < prev);
        prev = cert.value;
    }
}

TEST_CASE("domain guards on both bounds") {
    auto led = constant_ledger(1.0, 1.0, 1);
    CHECK_THROWS_AS((void)deep_net_lower_bound(1, 2, 1.0, 2.0, 1.0, 1, led), DomainError);
    CHECK_THROWS_AS((void)deep_net_lower_bound(4, 0, 1.0, 2.0, 1.0, 1, led), DomainError);
    CHECK_THROWS_AS((void)deep_net_lower_bound(4, 2, 1.0, 1.0, 1.0, 1, led), DomainError);
    auto bad = frozen_relation();
    bad.n = 0;
    CHECK_THROWS_AS((void)relation_lower_bound(bad), DomainError);
    bad = frozen_relation();
    bad.c2_tilde = 0.0;
    CHECK_THROWS_AS((void)relation_lower_bound(bad), DomainError);
}

TEST_CASE("specializing the relation bound reproduces the deep net bound") {
    // Feeding the covering profile of a depth-L net into the relation bound
    // must agree with the direct deep-net derivation up to the tracked
    // bookkeeping factor (the two use different log groupings).
    const double r = 1.0;
    const int d = 1;
    const int L = 2;
    const double R = 1.0;
    const double Dmax = 2.0;
    auto led = constant_ledger(1.0, 1.0, d);
    const long long n = 16;

    RelationInputs in;
    in.c1_tilde = 1.0;
    in.beta = 0.0;
    in.c2_tilde = std::pow(led.c3 * R * Dmax, 2.0 * (L + 1) * L);
    in.n = n;
    in.r = r;
    in.d = d;
    auto rel = relation_lower_bound(in);
    auto deep = deep_net_lower_bound(n, L, R, Dmax, r, d, led);

    const double droot = std::pow(static_cast<double>(d), 0.5 * d);
    const double logRD = std::log2(R * Dmax);
    REQUIRE(logRD > 0.0);

    const double A = 2.0 + 8.0 * droot * (1.0 + 3.0 * r / d + in.c2_tilde);
    const double B = 48.0 * droot * led.c3;
    const double factor =
        0.5 / droot *
        std::pow(12.0 * (std::log2(B) + 1.0) * L * L * logRD *
                     std::log2(static_cast<double>(n)) /
                     ((std::log2(A) + 1.0) * std::log2(static_cast<double>(n) + 1.0)),
                 r / d);
    CHECK(rel.value / deep.value == doctest::Approx(factor).epsilon(1e-12));
}

TEST_CASE("rate curves expose their scaling laws") {
    auto shallow = rate_curve("shallow-upper", 1.0, 2);
    CHECK_FALSE(shallow.constant_known);
    CHECK(shallow.value(16.0) == doctest::Approx(std::pow(16.0, -0.5)));

    auto relu = rate_curve("relu-deep-upper", 1.0, 2);
    CHECK(relu.value(16.0) / shallow.value(16.0) == doctest::Approx(std::log(16.0)).epsilon(1e-12));

    RateCurveParams params;
    params.L = 3;
    auto cov = rate_curve("shallow-covering", 1.0, 1, params);
    auto vc = rate_curve("vc-covering", 1.0, 1, params);
    CHECK(cov.value(10.0) == doctest::Approx(10.0));
    CHECK(vc.value(10.0) == doctest::Approx(30.0));

    auto lower = rate_curve("deep-lower", 1.0, 1, params);
    CHECK(lower.constant_known);
    CHECK(lower.value(16.0) > 0.0);

    CHECK_THROWS_AS((void)rate_curve("mystery", 1.0, 1), ValidationError);
}

TEST_CASE("gap rows normalize at the smallest n and isolate the log gap") {
    auto led = constant_ledger(1.0, 1.0, 1);
    auto report = gap_report(1.0, 1, 2, {16, 64, 256}, led);
    REQUIRE(report.rows.size() == 3);
    CHECK(report.rows[0].n == 16);
    CHECK(report.rows[0].shallow_upper == doctest::Approx(1.0));
    CHECK(report.rows[0].relu_deep_upper == doctest::Approx(1.0));
    CHECK(report.rows[0].deep_lower == doctest::Approx(1.0));
    CHECK(report.rows[0].shallow_covering == doctest::Approx(1.0));
    CHECK(report.rows[0].vc_covering == doctest::Approx(1.0));
    CHECK(report.rows[0].ratio == doctest::Approx(1.0));

    // normalized ratio = (log2 n / log2 n0)^{r/d}
    CHECK(report.rows[1].ratio == doctest::Approx(std::log2(64.0) / std::log2(16.0)).epsilon(1e-12));
    CHECK(report.rows[2].ratio == doctest::Approx(2.0).epsilon(1e-12));

    // covering columns scale linearly in n regardless of depth
    CHECK(report.rows[2].shallow_covering == doctest::Approx(16.0));
    CHECK(report.rows[2].vc_covering == doctest::Approx(16.0));

    // unsorted input is sorted; undersized n rejected
    auto sorted = gap_report(1.0, 1, 2, {256, 16, 64}, led);
    CHECK(sorted.rows.front().n == 16);
    CHECK_THROWS_AS((void)gap_report(1.0, 1, 2, {1, 4}, led), DomainError);
    CHECK_THROWS_AS((void)gap_report(1.0, 1, 2, {}, led), ValidationError);
}

TEST_CASE("fitted slopes recover the exponent once logs are divided out") {
    for (auto [r, d] : std::vector<std::pair<double, int>>{{1.0, 1}, {2.0, 2}, {1.0, 4}}) {
        auto led = constant_ledger(1.0, 1.0, 1);
        RateCurveParams params;
        params.ledger = led;
        auto lower = rate_curve("deep-lower", r, d, params);
        std::vector<double> xs, ys;
        for (double e = 10.0; e <= 20.0; e += 1.0) {
            double n = std::exp2(e);
            // divide the known log factor out so only n^{-r/d} remains
            double logs = std::pow(std::log2(n), r / static_cast<double>(d));
            xs.push_back(n);
            ys.push_back(lower.value(n) * logs);
        }
        double slope = loglog_slope(xs, ys);
        CHECK(slope == doctest::Approx(-r / static_cast<double>(d)).epsilon(0.01));
    }
}

TEST_CASE("loglog_slope validates its samples") {
    CHECK(loglog_slope({2.0, 4.0, 8.0}, {4.0, 16.0, 64.0}) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK_THROWS_AS((void)loglog_slope({1.0}, {1.0}), ValidationError);
    CHECK_THROWS_AS((void)loglog_slope({1.0, -2.0}, {1.0, 1.0}), DomainError);
    CHECK_THROWS_AS((void)loglog_slope({2.0, 2.0}, {1.0, 1.0}), DomainError);
}
