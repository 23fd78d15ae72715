#pragma once

// Reservoir side of the exact pure-dephasing solution.
//
// Only the product D(w) = J(w) c^2(w) ever enters the dynamics, so the
// spectral density is modelled as that single function:
//
//   Q1(t) =   int_0^inf D(w)/w^2 sin(w t) dw
//   Q2(t) = 2 int_0^inf D(w)/w^2 sin^2(w t/2) coth(beta w/2) dw
//
// For element pair energies E1, E2 (hbar = 1):
//   phase shift  dphi  = (E1^2 - E2^2) Q1
//   damping      Gamma = (E1 - E2)^2 Q2
//   R factor           = exp(-i dphi) exp(-Gamma)

#include "cqed/quadrature.hpp"

#include <complex>
#include <filesystem>
#include <string>
#include <vector>

namespace cqed {

class SpectralDensity {
public:
    enum class Family { Ohmic, Tabulated };

    /// D(w) = alpha w^s w_c^(1-s) exp(-w/w_c); alpha >= 0, s > 0, w_c > 0.
    static SpectralDensity ohmic(double alpha, double s, double omega_c);

    /// Linear interpolation between samples, power-law extrapolation below the
    /// first sample, zero above the last. Throws IntegrabilityError when the
    /// low-frequency exponent makes Q1/Q2 diverge.
    static SpectralDensity tabulated(std::vector<double> omega, std::vector<double> value);

    /// Two-column numeric text (w in rad/s, D(w)); '#' starts a comment.
    static SpectralDensity load_table(const std::filesystem::path& path);

    Family family() const noexcept { return family_; }
    double operator()(double omega) const;

    double alpha() const noexcept { return alpha_; }
    double exponent() const noexcept { return s_; }
    double omega_c() const noexcept { return omega_c_; }
    const std::vector<double>& table_omega() const noexcept { return omega_; }
    const std::vector<double>& table_value() const noexcept { return value_; }

    /// D(w) ~ low_prefactor * w^low_exponent as w -> 0.
    double low_exponent() const noexcept { return s_; }
    double low_prefactor() const noexcept { return low_prefactor_; }

    /// Characteristic frequency (w_c, or the last table abscissa).
    double scale() const noexcept;

private:
    SpectralDensity() = default;

    Family family_ = Family::Ohmic;
    double alpha_ = 0.0;
    double s_ = 1.0;
    double omega_c_ = 1.0;
    double low_prefactor_ = 0.0;
    std::vector<double> omega_;
    std::vector<double> value_;
};

class BathState {
public:
    static BathState zero_temperature() { return BathState(0.0, true); }
    /// beta in units of inverse angular frequency (hbar * beta), > 0.
    static BathState with_beta(double beta);
    /// beta = hbar / (k_B T); T = 0 selects the zero-temperature path.
    static BathState from_temperature(double kelvin, double hbar, double k_B);

    bool is_zero_temperature() const noexcept { return zero_; }
    double beta() const noexcept { return beta_; }
    /// coth(beta w / 2); exactly 1 at zero temperature.
    double coth_half(double omega) const;

private:
    BathState(double beta, bool zero) : beta_(beta), zero_(zero) {}
    double beta_;
    bool zero_;
};

using Integral = quadrature::Result;

Integral q1(const SpectralDensity& d, double t, const quadrature::Options& opts = {});
Integral q2(const SpectralDensity& d, const BathState& bath, double t, const quadrature::Options& opts = {});

struct ReservoirIntegrals {
    double q1 = 0.0;
    double q2 = 0.0;
};

ReservoirIntegrals reservoir_integrals(const SpectralDensity& d, const BathState& bath, double t,
                                       const quadrature::Options& opts = {});

inline double phase_shift(double e1, double e2, double q1_value) { return (e1 * e1 - e2 * e2) * q1_value; }
inline double damping(double e1, double e2, double q2_value) { return (e1 - e2) * (e1 - e2) * q2_value; }
std::complex<double> r_factor(double e1, double e2, const ReservoirIntegrals& q);

double phase_shift(double e1, double e2, const SpectralDensity& d, double t);
double damping(double e1, double e2, const SpectralDensity& d, const BathState& bath, double t);
std::complex<double> r_factor(double e1, double e2, const SpectralDensity& d, const BathState& bath, double t);

} // namespace cqed
