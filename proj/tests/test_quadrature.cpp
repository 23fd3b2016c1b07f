#include <doctest.h>

#include <jmkd/quadrature.hpp>

#include <cmath>
#include <numbers>

using namespace jmkd;

TEST_CASE("smooth integrands to tight tolerance") {
    double e1 = integrate_gk([](double x) { return std::exp(x); }, 0.0, 1.0, 1e-12);
    CHECK(std::abs(e1 - (std::numbers::e - 1.0)) < 1e-11);

    double p = integrate_gk([](double x) { return x * x; }, 0.0, 1.0, 1e-12);
    CHECK(std::abs(p - 1.0 / 3.0) < 1e-12);

    double s = integrate_gk([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, 1e-12);
    CHECK(std::abs(s - 2.0) < 1e-11);
}

TEST_CASE("orientation and degenerate interval") {
    auto f = [](double x) { return x; };
    CHECK(integrate_gk(f, 1.0, 0.0, 1e-12) == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(integrate_gk(f, 2.0, 2.0) == 0.0);
    CHECK(integrate_simpson(f, 1.0, 0.0, 1e-12) == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("oscillatory cancellation") {
    double v = integrate_gk([](double x) { return std::sin(x); }, 0.0, 10.0 * std::numbers::pi,
                            1e-10);
    CHECK(std::abs(v) < 1e-9);
}

TEST_CASE("integrable endpoint singularity converges") {
    double v = integrate_gk([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-9, 48);
    CHECK(std::abs(v - 2.0) < 1e-7);
    double lg = integrate_gk([](double x) { return std::log(x); }, 0.0, 1.0, 1e-9, 48);
    CHECK(std::abs(lg + 1.0) < 1e-7);
}

TEST_CASE("non-finite sample point reports a singular interval") {
    // the central Kronrod node hits the midpoint exactly
    auto f = [](double x) { return 1.0 / (x - 0.5); };
    CHECK_THROWS_AS(integrate_gk(f, 0.0, 1.0), QuadratureError);
    try {
        integrate_gk(f, 0.0, 1.0);
    } catch (const QuadratureError& e) {
        CHECK(e.kind == QuadratureError::Kind::SingularInterval);
    }
}

TEST_CASE("non-integrable singularity exhausts the depth budget") {
    auto f = [](double x) { return 1.0 / x; };
    try {
        integrate_gk(f, 0.0, 1.0, 1e-10, 20);
        FAIL("expected QuadratureError");
    } catch (const QuadratureError& e) {
        CHECK(e.kind == QuadratureError::Kind::NoConvergence);
    }
}

TEST_CASE("the two rules agree on a generic integrand") {
    auto f = [](double x) { return std::exp(-x * x) * std::cos(3.0 * x); };
    double a = integrate_gk(f, -2.0, 2.0, 1e-11);
    double b = integrate_simpson(f, -2.0, 2.0, 1e-11);
    CHECK(std::abs(a - b) < 1e-9);
}
