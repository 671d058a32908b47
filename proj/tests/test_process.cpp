#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "tzone/process.hpp"

using namespace tzone;

TEST_SUITE("process") {

TEST_CASE("physical potential drift vanishes at the equilibrium point") {
    const auto spec = ProcessSpec::physical(2.0, 0.5, 1e-3, 0.1);
    CHECK(drift(spec, spec.equilibrium()) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("hindered diffusion drift is beta^2/2 everywhere") {
    const double beta = 5.42e-3;
    const auto spec = ProcessSpec::hindered(beta, 0.0);
    const double expected = 0.5 * beta * beta;
    CHECK(drift(spec, 0.0) == doctest::Approx(expected));
    CHECK(drift(spec, 1.7) == doctest::Approx(expected));
    // the fitted beta gives the drift quoted with it
    CHECK(drift(spec, 0.5) == doctest::Approx(1.469e-5).epsilon(1e-3));
}

TEST_CASE("physical drift, hand-evaluated point") {
    // C = F = 1, barrier 0 puts the equilibrium at 1; at s = 2 the two terms
    // are 3 and -2.
    const auto spec = ProcessSpec::physical(1.0, 1.0, 0.0, 0.0);
    CHECK(spec.equilibrium() == doctest::Approx(1.0));
    CHECK(drift(spec, 2.0) == doctest::Approx(1.0));
}

TEST_CASE("square-root volatility") {
    const auto spec = ProcessSpec::krugman_local(1e-5, 5.42e-3, 1.0);
    CHECK(volatility(spec, 1.0) == 0.0);
    CHECK(volatility(spec, 2.0) == doctest::Approx(5.42e-3));

    const auto wide = ProcessSpec::krugman_local(0.0, 2.0, 0.0);
    CHECK(volatility(wide, 0.25) == doctest::Approx(1.0));
}

TEST_CASE("gbm drift and volatility are the given constants") {
    const auto spec = ProcessSpec::gbm(3.0, 0.25);
    CHECK(drift(spec, -100.0) == 3.0);
    CHECK(volatility(spec, 100.0) == 0.25);
}

TEST_CASE("below-barrier evaluation is a domain error") {
    const auto spec = ProcessSpec::krugman_local(1e-5, 5.42e-3, 0.5);
    CHECK_THROWS_AS(drift(spec, 0.49), std::domain_error);
    CHECK_THROWS_AS(volatility(spec, 0.49), std::domain_error);
    CHECK_THROWS_AS(drift(ProcessSpec::hindered(1e-3, 0.0), -1e-9), std::domain_error);
    CHECK_THROWS_AS(drift(ProcessSpec::physical(1.0, 1.0, 0.1, 0.0), -0.1), std::domain_error);
}

TEST_CASE("parameter invariants are enforced") {
    CHECK_THROWS_AS(ProcessSpec::physical(-1.0, 1.0, 0.1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(ProcessSpec::physical(1.0, 0.0, 0.1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(ProcessSpec::krugman_local(0.0, 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(ProcessSpec::krugman_local(0.0, -2.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(ProcessSpec::hindered(0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(ProcessSpec::gbm(0.0, -1.0), std::invalid_argument);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(ProcessSpec::krugman_local(0.0, 1.0, nan), std::invalid_argument);
}

TEST_CASE("model names for reporting") {
    CHECK(ProcessSpec::gbm(0, 1).model_name() == "gbm");
    CHECK(ProcessSpec::hindered(1e-3, 0.0).model_name() == "hindered");
}

}  // TEST_SUITE
