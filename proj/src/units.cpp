#include "cqed/units.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace cqed::units {
namespace {

struct Suffix {
    std::string_view name;
    Dimension dim;
    double scale;
};

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Energy-as-frequency entries are resolved separately (scale * hbar).
constexpr std::array kSuffixes{
    Suffix{"Hz_cyc", Dimension::AngularFrequency, kTwoPi},
    Suffix{"kHz_cyc", Dimension::AngularFrequency, kTwoPi * 1e3},
    Suffix{"MHz_cyc", Dimension::AngularFrequency, kTwoPi * 1e6},
    Suffix{"GHz_cyc", Dimension::AngularFrequency, kTwoPi * 1e9},
    Suffix{"Hz_rad", Dimension::AngularFrequency, 1.0},
    Suffix{"kHz_rad", Dimension::AngularFrequency, 1e3},
    Suffix{"MHz_rad", Dimension::AngularFrequency, 1e6},
    Suffix{"GHz_rad", Dimension::AngularFrequency, 1e9},
    Suffix{"rad_per_s", Dimension::AngularFrequency, 1.0},
    Suffix{"J", Dimension::Energy, 1.0},
    Suffix{"eV", Dimension::Energy, 1.602176634e-19},
    Suffix{"s", Dimension::Time, 1.0},
    Suffix{"ms", Dimension::Time, 1e-3},
    Suffix{"us", Dimension::Time, 1e-6},
    Suffix{"ns", Dimension::Time, 1e-9},
    Suffix{"ps", Dimension::Time, 1e-12},
    Suffix{"m", Dimension::Length, 1.0},
    Suffix{"cm", Dimension::Length, 1e-2},
    Suffix{"mm", Dimension::Length, 1e-3},
    Suffix{"um", Dimension::Length, 1e-6},
    Suffix{"nm", Dimension::Length, 1e-9},
    Suffix{"m2", Dimension::Area, 1.0},
    Suffix{"mm2", Dimension::Area, 1e-6},
    Suffix{"um2", Dimension::Area, 1e-12},
    Suffix{"F", Dimension::Capacitance, 1.0},
    Suffix{"pF", Dimension::Capacitance, 1e-12},
    Suffix{"fF", Dimension::Capacitance, 1e-15},
    Suffix{"aF", Dimension::Capacitance, 1e-18},
    Suffix{"F_per_m", Dimension::CapacitancePerLength, 1.0},
    Suffix{"pF_per_m", Dimension::CapacitancePerLength, 1e-12},
    Suffix{"fF_per_m", Dimension::CapacitancePerLength, 1e-15},
    Suffix{"H_per_m", Dimension::InductancePerLength, 1.0},
    Suffix{"uH_per_m", Dimension::InductancePerLength, 1e-6},
    Suffix{"nH_per_m", Dimension::InductancePerLength, 1e-9},
    Suffix{"V", Dimension::Voltage, 1.0},
    Suffix{"mV", Dimension::Voltage, 1e-3},
    Suffix{"uV", Dimension::Voltage, 1e-6},
    Suffix{"Wb", Dimension::MagneticFlux, 1.0},
    Suffix{"K", Dimension::Temperature, 1.0},
    Suffix{"mK", Dimension::Temperature, 1e-3},
};

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

const Suffix* find_suffix(std::string_view name)
{
    for (const auto& s : kSuffixes)
        if (s.name == name) return &s;
    return nullptr;
}

} // namespace

std::string_view dimension_name(Dimension d) noexcept
{
    switch (d) {
    case Dimension::Dimensionless: return "dimensionless";
    case Dimension::AngularFrequency: return "angular frequency";
    case Dimension::Energy: return "energy";
    case Dimension::Time: return "time";
    case Dimension::Length: return "length";
    case Dimension::Area: return "area";
    case Dimension::Capacitance: return "capacitance";
    case Dimension::CapacitancePerLength: return "capacitance per length";
    case Dimension::InductancePerLength: return "inductance per length";
    case Dimension::Voltage: return "voltage";
    case Dimension::MagneticFlux: return "magnetic flux";
    case Dimension::Temperature: return "temperature";
    }
    return "?";
}

std::string_view canonical_suffix(Dimension d) noexcept
{
    switch (d) {
    case Dimension::Dimensionless: return "";
    case Dimension::AngularFrequency: return "Hz_rad";
    case Dimension::Energy: return "J";
    case Dimension::Time: return "s";
    case Dimension::Length: return "m";
    case Dimension::Area: return "m2";
    case Dimension::Capacitance: return "F";
    case Dimension::CapacitancePerLength: return "F_per_m";
    case Dimension::InductancePerLength: return "H_per_m";
    case Dimension::Voltage: return "V";
    case Dimension::MagneticFlux: return "Wb";
    case Dimension::Temperature: return "K";
    }
    return "";
}

ParsedQuantity parse_quantity(std::string_view text, Dimension d, double hbar, double flux_quantum)
{
    text = trim(text);
    const auto space = text.find_first_of(" \t");
    const std::string_view num = text.substr(0, space);
    const std::string_view suffix = space == std::string_view::npos ? std::string_view{} : trim(text.substr(space));

    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), value);
    if (ec != std::errc{} || ptr != num.data() + num.size() || !std::isfinite(value))
        throw std::invalid_argument("malformed number '" + std::string(num) + "'");

    if (d == Dimension::Dimensionless) {
        if (!suffix.empty())
            throw std::invalid_argument("dimensionless quantity must not carry a unit suffix ('" +
                                        std::string(suffix) + "')");
        return {value, ""};
    }
    if (suffix.empty())
        throw std::invalid_argument("unit suffix missing on " + std::string(dimension_name(d)) + " quantity");

    if (d == Dimension::MagneticFlux && suffix == "Phi0") return {value * flux_quantum, std::string(suffix)};

    const Suffix* s = find_suffix(suffix);
    if (s == nullptr) throw std::invalid_argument("unknown unit suffix '" + std::string(suffix) + "'");
    if (d == Dimension::Energy && s->dim == Dimension::AngularFrequency)
        return {value * s->scale * hbar, std::string(suffix)};
    if (s->dim != d)
        throw std::invalid_argument("unit suffix '" + std::string(suffix) + "' is a " +
                                    std::string(dimension_name(s->dim)) + ", expected " +
                                    std::string(dimension_name(d)));
    return {value * s->scale, std::string(suffix)};
}

std::string format_number(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_quantity(double value, Dimension d)
{
    std::string s = format_number(value);
    if (d != Dimension::Dimensionless) {
        s += ' ';
        s += canonical_suffix(d);
    }
    return s;
}

} // namespace cqed::units
