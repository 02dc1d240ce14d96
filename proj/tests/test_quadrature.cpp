#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hypgraph/quadrature.hpp"

using namespace hypgraph;

TEST_CASE("gauss-kronrod rule integrates polynomials exactly") {
    for (int k : {0, 1, 5, 12, 20}) {
        const auto r = gauss_kronrod15([k](double x) { return std::pow(x, k); }, 0.0, 1.0);
        CHECK(r.value == doctest::Approx(1.0 / (k + 1)).epsilon(1e-14));
    }
}

TEST_CASE("adaptive integration of smooth and peaked integrands") {
    const auto e = integrate_adaptive([](double x) { return std::exp(x); }, 0.0, 2.0);
    CHECK(std::abs(e.value - std::expm1(2.0)) < 1e-12);
    const auto peak = integrate_adaptive([](double x) { return 1.0 / (1e-4 + x * x); }, -1.0, 1.0, 1e-10);
    CHECK(std::abs(peak.value - 2.0 / 1e-2 * std::atan(1.0 / 1e-2)) < 1e-8);
    CHECK(peak.panels > 1);
}

TEST_CASE("tail truncation with an analytic bound") {
    const auto r = integrate_to_infinity([](double x) { return 1.0 / std::cosh(x); }, 0.0,
                                         [](double T) { return 2.0 * std::exp(-T); }, 1e-12, 1e-14);
    CHECK(std::abs(r.value - std::numbers::pi / 2) < 1e-10);
}

TEST_CASE("reversed or empty intervals") {
    CHECK(integrate_adaptive([](double) { return 1.0; }, 1.0, 1.0).value == 0.0);
    CHECK_THROWS(integrate_adaptive([](double) { return 1.0; }, 1.0, 0.0));
}
