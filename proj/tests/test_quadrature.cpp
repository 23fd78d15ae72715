#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cqed/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <vector>

using namespace cqed::quadrature;

TEST_CASE("single panel is exact for low-order polynomials")
{
    const Result r = gauss_kronrod_15([](double x) { return std::pow(x, 20) - 3 * x + 1; }, -1.0, 2.0);
    const double expect = (std::pow(2.0, 21) + 1.0) / 21.0 - 1.5 * (4.0 - 1.0) + 3.0;
    CHECK(r.value == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("adaptive integration")
{
    const std::vector<double> bp{0.0, 1.0};
    const Result s = integrate([](double x) { return 1.0 / std::sqrt(x); }, bp);
    CHECK(s.converged);
    CHECK(s.value == doctest::Approx(2.0).epsilon(1e-8));

    const std::vector<double> osc{0.0, 10.0, 50.0};
    const Result o = integrate([](double x) { return std::sin(x) * std::exp(-0.1 * x); }, osc);
    const double expect = (1.0 - std::exp(-5.0) * (0.1 * std::sin(50.0) + std::cos(50.0))) / 1.01;
    CHECK(o.value == doctest::Approx(expect).epsilon(1e-10));
    CHECK(o.error < 1e-8 * o.abs_value);
}

TEST_CASE("cancellation scale")
{
    const std::vector<double> bp{0.0, std::numbers::pi, 2.0 * std::numbers::pi};
    const Result r = integrate([](double x) { return std::sin(x); }, bp, {1e-10, 1e-14});
    CHECK(std::abs(r.value) < 1e-13);
    CHECK(r.abs_value == doctest::Approx(4.0).epsilon(1e-10));
}

TEST_CASE("panel budget")
{
    const std::vector<double> bp{0.0, 1.0};
    Options o;
    o.rel_tol = 1e-15;
    o.max_panels = 3;
    const Result r = integrate([](double x) { return std::sin(1.0 / (x + 1e-3)); }, bp, o);
    CHECK_FALSE(r.converged);
    CHECK(r.panels <= 3);
}
