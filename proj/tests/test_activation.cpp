#include "doctest.h"

#include "netcap/activation.hpp"
#include "netcap/errors.hpp"

#include <cmath>

using namespace netcap;

TEST_CASE("logistic midpoint, symmetry and declared constants") {
    const ActivationSpec act = logistic_activation();
    CHECK(act(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(act(3.0) + act(-3.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(act.lipschitz_c1 == doctest::Approx(0.25));
    CHECK(act.growth_c == 1.0);
    CHECK(act.sigmoidal());
    // Large arguments must not overflow.
    CHECK(act(1000.0) == doctest::Approx(1.0));
    CHECK(act(-1000.0) == doctest::Approx(0.0));
}

TEST_CASE("relu and gaussian basics") {
    const ActivationSpec relu = relu_activation();
    CHECK(relu(-2.0) == 0.0);
    CHECK(relu(3.5) == 3.5);
    CHECK(relu.lipschitz_c1 == 1.0);
    CHECK_FALSE(relu.sigmoidal());

    const ActivationSpec gauss = gaussian_activation();
    CHECK(gauss(0.0) == 1.0);
    CHECK(gauss(2.0) == doctest::Approx(std::exp(-4.0)));
    CHECK_FALSE(gauss.sigmoidal());
}

TEST_CASE("tanh and arctan sigmoids hit their limits") {
    const ActivationSpec th = tanh_sigmoid_activation();
    CHECK(th(0.0) == doctest::Approx(0.5));
    CHECK(th(50.0) == doctest::Approx(1.0));
    CHECK(th(-50.0) == doctest::Approx(0.0));
    CHECK(th.sigmoidal());

    const ActivationSpec at = arctan_sigmoid_activation();
    CHECK(at(0.0) == doctest::Approx(0.5));
    CHECK(at(1e8) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(at.sigmoidal());
}

TEST_CASE("gompertz declared Lipschitz constant covers the steepest slope") {
    // s(t) = exp(-a exp(-b t)); the steepest slope is a b e^{-1} at the
    // inflection for a = 1, giving b/e, never below 1 in the declaration.
    const ActivationSpec g1 = gompertz_activation(1.0, 1.0);
    CHECK(g1.lipschitz_c1 == 1.0);
    const ActivationSpec g2 = gompertz_activation(1.0, 6.0);
    CHECK(g2.lipschitz_c1 == doctest::Approx(6.0 / std::exp(1.0)));
    CHECK(g1(1000.0) == doctest::Approx(1.0));
    CHECK(g1(-1000.0) == doctest::Approx(0.0));
    CHECK(g1.sigmoidal());

    const ActivationCertificate cert = certify_activation(g2, 20000, 50.0);
    CHECK(cert.pass);
    CHECK(cert.max_lipschitz_ratio <= g2.lipschitz_c1 * (1.0 + 1e-9));
}

TEST_CASE("custom table interpolates and extrapolates flat") {
    const ActivationSpec tab =
        custom_table_activation({-1.0, 0.0, 1.0}, {0.0, 1.0, 0.5}, 1.0, 1.0);
    CHECK(tab(-1.0) == 0.0);
    CHECK(tab(-0.5) == doctest::Approx(0.5));
    CHECK(tab(0.5) == doctest::Approx(0.75));
    CHECK(tab(10.0) == 0.5);   // constant beyond the last knot
    CHECK(tab(-10.0) == 0.0);
    CHECK_THROWS_AS(custom_table_activation({0.0, 0.0}, {1.0, 2.0}, 1.0, 1.0),
                    ValidationError);
}

TEST_CASE("activation lookup by name") {
    CHECK(activation_by_name("logistic").rule == "logistic");
    CHECK(activation_by_name("relu").rule == "relu");
    CHECK(activation_by_name("gompertz").rule == "gompertz");
    CHECK_THROWS_AS(activation_by_name("swish"), ValidationError);
}

TEST_CASE("certification flags an undersized declared constant") {
    // Declared Lipschitz constant far below the real slope of 1.
    ActivationSpec bogus = relu_activation();
    bogus.lipschitz_c1 = 0.1;
    const ActivationCertificate cert = certify_activation(bogus, 5000, 10.0);
    CHECK_FALSE(cert.pass);
    CHECK(cert.max_lipschitz_ratio > 0.5);
}
