#pragma once

// Unit-suffixed quantities ("360 MHz_rad", "160 ns", "0.13 fF_per_m").
// Frequencies always carry an explicit _cyc (cycles/s, multiplied by 2*pi) or
// _rad (rad/s) tag. Energies may be written as E/hbar using a frequency suffix.

#include <string>
#include <string_view>

namespace cqed::units {

enum class Dimension {
    Dimensionless,
    AngularFrequency,   // rad/s
    Energy,             // J
    Time,               // s
    Length,             // m
    Area,               // m^2
    Capacitance,        // F
    CapacitancePerLength,
    InductancePerLength,
    Voltage,            // V
    MagneticFlux,       // Wb
    Temperature,        // K
};

std::string_view dimension_name(Dimension d) noexcept;
/// Canonical SI suffix used when writing a quantity back out.
std::string_view canonical_suffix(Dimension d) noexcept;

struct ParsedQuantity {
    double value;  // SI
    std::string suffix;
};

/// Parses "<number> <suffix>" into SI. `hbar` converts frequency-tagged
/// energies; `flux_quantum` converts Phi0-tagged fluxes. Throws
/// std::invalid_argument with a readable message on malformed input, a
/// missing suffix, or a suffix of the wrong dimension.
ParsedQuantity parse_quantity(std::string_view text, Dimension d, double hbar, double flux_quantum);

/// 17-significant-digit round-trippable "<value> <canonical suffix>".
std::string format_quantity(double value, Dimension d);

/// Round-trippable number text (%.17g).
std::string format_number(double v);

} // namespace cqed::units
