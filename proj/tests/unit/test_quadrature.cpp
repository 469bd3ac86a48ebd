#include "doctest.h"

#include <cmath>

#include "ldpcbounds/quadrature.hpp"

using namespace ldpcbounds;

TEST_SUITE("quadrature") {

TEST_CASE("gauss-hermite rule integrates low moments of the weight exactly") {
    for (int n : {16, 64, 128, 256}) {
        const GaussHermiteRule& rule = gauss_hermite(n);
        double w0 = 0.0, w2 = 0.0;
        for (int i = 0; i < n; ++i) {
            w0 += rule.weights[i];
            w2 += rule.weights[i] * rule.nodes[i] * rule.nodes[i];
        }
        const double sqrt_pi = std::sqrt(std::acos(-1.0));
        CHECK(w0 == doctest::Approx(sqrt_pi).epsilon(1e-13));
        CHECK(w2 == doctest::Approx(0.5 * sqrt_pi).epsilon(1e-12));
    }
}

TEST_CASE("gaussian expectation of polynomials and exp") {
    // E[x^2] = mean^2 + sd^2, E[e^x] = e^{mean + sd^2/2}
    QuadResult r = gaussian_expectation([](double x) { return x * x; }, 1.5, 2.0);
    CHECK(r.value == doctest::Approx(1.5 * 1.5 + 4.0).epsilon(1e-12));
    CHECK(r.error_estimate < 1e-10);

    r = gaussian_expectation([](double x) { return std::exp(x); }, 0.25, 1.0);
    CHECK(r.value == doctest::Approx(std::exp(0.25 + 0.5)).epsilon(1e-12));
}

TEST_CASE("starved node budget falls back to the adaptive rule") {
    // 8 nodes cannot resolve this integrand to 1e-10; the fallback must.
    auto f = [](double x) { return std::tanh(0.5 * x) * std::tanh(0.5 * x); };
    QuadResult r = gaussian_expectation(f, 2.0, 2.0, QuadratureConfig{8, 1e-10});
    CHECK(r.used_fallback);
    QuadResult fine = gaussian_expectation(f, 2.0, 2.0, QuadratureConfig{256, 1e-10});
    CHECK(!fine.used_fallback);
    CHECK(r.value == doctest::Approx(fine.value).epsilon(1e-10));
}

TEST_CASE("interval integration matches closed forms") {
    double err = 0.0;
    const double v = integrate_interval([](double x) { return std::sin(x); }, 0.0,
                                        std::acos(-1.0), 1e-12, &err);
    CHECK(v == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(err < 1e-10);
}

}
