#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cqed/units.hpp"

#include <numbers>
#include <stdexcept>

using namespace cqed::units;

namespace {

constexpr double kHbar = 1.054571817e-34;
constexpr double kPhi0 = 2.067833848e-15;

double parse(const char* text, Dimension d)
{
    return parse_quantity(text, d, kHbar, kPhi0).value;
}

} // namespace

TEST_CASE("frequencies carry an explicit tag")
{
    CHECK(parse("360 MHz_rad", Dimension::AngularFrequency) == doctest::Approx(3.6e8).epsilon(1e-15));
    CHECK(parse("6 GHz_cyc", Dimension::AngularFrequency) ==
          doctest::Approx(2 * std::numbers::pi * 6e9).epsilon(1e-15));
    CHECK(parse("1 Hz_rad", Dimension::AngularFrequency) == 1.0);
    CHECK_THROWS_AS(parse("360 MHz", Dimension::AngularFrequency), std::invalid_argument);
}

TEST_CASE("other dimensions")
{
    CHECK(parse("160 ns", Dimension::Time) == doctest::Approx(1.6e-7).epsilon(1e-15));
    CHECK(parse("25 mm", Dimension::Length) == doctest::Approx(0.025).epsilon(1e-15));
    CHECK(parse("0.13 fF_per_m", Dimension::CapacitancePerLength) == doctest::Approx(1.3e-16).epsilon(1e-15));
    CHECK(parse("0.42 uH_per_m", Dimension::InductancePerLength) == doctest::Approx(4.2e-7).epsilon(1e-15));
    CHECK(parse("1 um2", Dimension::Area) == doctest::Approx(1e-12).epsilon(1e-15));
    CHECK(parse("-2 mV", Dimension::Voltage) == doctest::Approx(-2e-3).epsilon(1e-15));
    CHECK(parse("5 GHz_rad", Dimension::Energy) == doctest::Approx(5e9 * kHbar).epsilon(1e-15));
    CHECK(parse("0.5 Phi0", Dimension::MagneticFlux) == doctest::Approx(0.5 * kPhi0).epsilon(1e-15));
}

TEST_CASE("malformed quantities")
{
    CHECK_THROWS_AS(parse("", Dimension::Time), std::invalid_argument);
    CHECK_THROWS_AS(parse("12", Dimension::Time), std::invalid_argument);
    CHECK_THROWS_AS(parse("abc ns", Dimension::Time), std::invalid_argument);
    CHECK_THROWS_AS(parse("3 mm", Dimension::Time), std::invalid_argument);
    CHECK_THROWS_AS(parse("3 ns extra", Dimension::Time), std::invalid_argument);
}

TEST_CASE("format round trip")
{
    for (Dimension d : {Dimension::AngularFrequency, Dimension::Time, Dimension::Length, Dimension::Capacitance,
                        Dimension::Energy, Dimension::MagneticFlux, Dimension::Voltage}) {
        for (double v : {1.0 / 3.0, 6.02214076e23, -2.5e-19, 0.0}) {
            const double back = parse(format_quantity(v, d).c_str(), d);
            CHECK(back == v);
        }
    }
    CHECK(format_number(0.1) == "0.10000000000000001");
}
