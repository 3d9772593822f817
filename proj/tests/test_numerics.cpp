#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "exponentia/numerics.hpp"

using namespace exponentia;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("golden section finds interior maxima") {
    const auto m = golden_max([](double x) { return -(x - kPi) * (x - kPi); },
                              0.0, 10.0);
    CHECK(std::abs(m.arg - kPi) < 1e-8);
    CHECK(m.value <= 0.0);
    CHECK(m.value > -1e-15);

    // Narrow bracket still converges.
    const auto n = golden_max([](double x) { return std::sin(x); }, 1.0, 2.0);
    CHECK(std::abs(n.arg - kPi / 2.0) < 1e-8);
    CHECK(std::abs(n.value - 1.0) < 1e-14);
}

TEST_CASE("golden section keeps exact endpoints") {
    // Monotone objectives must return the boundary argument exactly; the
    // downstream exponent curves rely on this for endpoint identities.
    const auto hi = golden_max([](double x) { return x; }, 0.0, 1.0);
    CHECK(hi.arg == 1.0);
    CHECK(hi.value == 1.0);

    const auto lo = golden_max([](double x) { return -x; }, 0.0, 1.0);
    CHECK(lo.arg == 0.0);
    CHECK(lo.value == 0.0);

    const auto pt = golden_max([](double x) { return x * x; }, 2.0, 2.0);
    CHECK(pt.arg == 2.0);
    CHECK(pt.value == 4.0);
}

TEST_CASE("golden section input validation") {
    CHECK_THROWS_AS(golden_max([](double x) { return x; }, 1.0, 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(golden_max([](double x) { return x; }, 0.0, 1.0, 1e-10, 2),
                    std::invalid_argument);
}

TEST_CASE("bisection root finding") {
    const double r = bisect_root([](double x) { return x * x - 2.0; }, 0.0, 2.0);
    CHECK(std::abs(r - std::sqrt(2.0)) < 1e-11);

    const double r2 = bisect_root([](double x) { return 5.0 - x; }, 0.0, 20.0);
    CHECK(std::abs(r2 - 5.0) < 1e-11);

    CHECK_THROWS_AS(bisect_root([](double x) { return x + 1.0; }, 0.0, 2.0),
                    std::invalid_argument);
}

TEST_CASE("derivative estimates") {
    const double d1 = central_difference([](double x) { return std::exp(x); },
                                         0.3, 1e-5);
    CHECK(std::abs(d1 - std::exp(0.3)) < 1e-9);

    const double d2 = richardson_derivative(
        [](double x) { return std::exp(x); }, 0.3, 1e-3);
    CHECK(std::abs(d2 - std::exp(0.3)) < 1e-11);

    const double d3 = richardson_derivative(
        [](double x) { return x * x * x; }, 2.0, 1e-4);
    CHECK(std::abs(d3 - 12.0) < 1e-8);
}

TEST_CASE("geometric grid construction") {
    const auto g = geometric_grid(1.0 / 64.0, 1.0 / 16384.0, 0.5);
    REQUIRE(g.size() == 9);
    CHECK(g.front() == 1.0 / 64.0);
    CHECK(g.back() == 1.0 / 16384.0); // halving is exact in binary
    for (std::size_t i = 1; i < g.size(); ++i)
        CHECK(g[i] == 0.5 * g[i - 1]);

    CHECK_THROWS_AS(geometric_grid(1.0, 2.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(geometric_grid(1.0, 0.5, 1.5), std::invalid_argument);
}

TEST_CASE("limit extrapolation recovers polynomials exactly") {
    // y(x) = 3 + 2x - 5x^2 + 7x^3 sampled on a geometric grid; a third-order
    // tableau must recover limit and slope to roundoff.
    std::vector<std::pair<double, double>> samples;
    double x = 0.1;
    for (int i = 0; i < 8; ++i) {
        samples.push_back({x, 3.0 + 2.0 * x - 5.0 * x * x + 7.0 * x * x * x});
        x *= 0.5;
    }
    const auto fit = fit_limit_and_slope(samples);
    CHECK(std::abs(fit.limit - 3.0) < 1e-12);
    CHECK(std::abs(fit.slope - 2.0) < 1e-9);
}

TEST_CASE("limit extrapolation input validation") {
    std::vector<std::pair<double, double>> few = {{0.1, 1.0}, {0.05, 1.0},
                                                  {0.025, 1.0}};
    CHECK_THROWS_AS(fit_limit_and_slope(few), std::invalid_argument);

    std::vector<std::pair<double, double>> skew = {
        {0.1, 1.0}, {0.05, 1.0}, {0.03, 1.0}, {0.015, 1.0}};
    CHECK_THROWS_AS(fit_limit_and_slope(skew), std::invalid_argument);

    std::vector<std::pair<double, double>> up = {
        {0.1, 1.0}, {0.2, 1.0}, {0.4, 1.0}, {0.8, 1.0}};
    CHECK_THROWS_AS(fit_limit_and_slope(up), std::invalid_argument);
}

TEST_CASE("limit extrapolation beats naive reading on smooth data") {
    // y(x) = exp(x): limit 1, slope 1. With samples no finer than 1/80 the
    // tableau should still nail both far better than the last sample does.
    std::vector<std::pair<double, double>> samples;
    double x = 0.1;
    for (int i = 0; i < 6; ++i) {
        samples.push_back({x, std::exp(x)});
        x *= 0.5;
    }
    const auto fit = fit_limit_and_slope(samples);
    CHECK(std::abs(fit.limit - 1.0) < 1e-7);
    CHECK(std::abs(fit.slope - 1.0) < 1e-4);
}
