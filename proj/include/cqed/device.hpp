#pragma once

// Physical circuit parameters -> effective model constants.
//
// SI throughout: energies in J, frequencies in rad/s, lengths in m.
// CircuitModel is the same information in hbar = 1 form (every energy divided
// by hbar, so all entries are angular frequencies); Hamiltonian construction
// and dynamics work exclusively with it.

#include <vector>

namespace cqed {

struct PhysicalConstants {
    double hbar = 1.054571817e-34;          // J s
    double e = 1.602176634e-19;             // C
    double mu0 = 1.25663706212e-6;          // N / A^2
    double flux_quantum = 2.067833848e-15;  // Wb, h / 2e
    double k_B = 1.380649e-23;              // J / K

    friend bool operator==(const PhysicalConstants&, const PhysicalConstants&) = default;
};

struct DeviceParams {
    double E_C = 0.0;      // charging energy [J]
    double E_J_max = 0.0;  // maximum Josephson energy [J]
    double omega_a = 0.0;  // TLRA frequency [rad/s]
    double omega_b = 0.0;  // TLRB frequency [rad/s]
    double L_a = 0.0;      // TLRA length [m]
    double L_b = 0.0;      // TLRB length [m]
    double c_cap = 0.0;    // capacitance per unit length [F/m]
    double l_ind = 0.0;    // inductance per unit length [H/m]
    double C_g = 0.0;      // gate capacitance [F]
    double C_a = 0.0;      // TLRA-qubit coupling capacitance [F]
    double V_g_dc = 0.0;   // dc gate voltage [V], any sign
    double S_loop = 0.0;   // SQUID loop area [m^2], may be 0
    double d_dist = 0.0;   // TLRB-SQUID distance [m]
    double Phi_e = 0.0;    // external flux [Wb], any sign
    PhysicalConstants constants{};

    friend bool operator==(const DeviceParams&, const DeviceParams&) = default;
};

struct EffectiveParams {
    double g_a = 0.0;            // qubit-TLRA coupling [rad/s]
    double phi_b = 0.0;          // quantized-flux amplitude, dimensionless
    double phi_e = 0.0;          // pi Phi_e / Phi_0
    double n_g_dc = 0.5;         // dc gate charge number
    double omega_a_prime = 0.0;  // effective TLRA frequency [rad/s]
    double chi = 0.0;            // cross-Kerr strength [rad/s]
    double omega_a = 0.0;        // carried for downstream stages [rad/s]
    double omega_b = 0.0;

    friend bool operator==(const EffectiveParams&, const EffectiveParams&) = default;
};

struct CircuitModel {
    double omega_a = 0.0;
    double omega_b = 0.0;
    double charging = 0.0;   // E_C / hbar
    double josephson = 0.0;  // E_J^m / hbar
    double n_g_dc = 0.5;
    double g_a = 0.0;
    double phi_b = 0.0;
    double phi_e = 0.0;
};

struct DispersiveConstants {
    double omega_a_prime;
    double chi;
};

/// omega'_a = g^2/omega_a + 2 g^2 E_J/(omega_a^2) - chi/2 and
/// chi = 2 g^2 phi_b^2 E_J / omega_a^2, with E_J given as E_J^m/hbar.
DispersiveConstants dispersive_constants(double g_a, double phi_b, double omega_a, double josephson);

/// Throws InvalidArgument naming the first non-positive required field.
void validate(const DeviceParams& p);

EffectiveParams effective_couplings(const DeviceParams& p);

/// Effective constants of an hbar = 1 model (bypasses the device map).
EffectiveParams effective_params(const CircuitModel& model);

CircuitModel circuit_model(const DeviceParams& p, const EffectiveParams& eff);

/// omega_q(n_b) = 2 E_J [1 - phi_b^2 (1 + 2 n_b)/2], E_J as E_J^m/hbar.
double qubit_frequency(double phi_b, double josephson, int n_b);
inline double qubit_frequency(const EffectiveParams& eff, double josephson, int n_b)
{
    return qubit_frequency(eff.phi_b, josephson, n_b);
}

// --- regime diagnostics ------------------------------------------------------

struct RegimeThresholds {
    double small_flux = 0.2;   // phi_b
    double dispersive = 0.1;   // g_a / |Delta|
    double rwa = 0.5;          // max(|Delta|, g_a) / (omega_q + omega_a)

    friend bool operator==(const RegimeThresholds&, const RegimeThresholds&) = default;
};

enum class RegimeFlag { Pass, Warn, Fail };

const char* to_string(RegimeFlag f) noexcept;

struct RegimeCheck {
    double ratio = 0.0;
    RegimeFlag flag = RegimeFlag::Pass;
};

struct RegimeRow {
    int n_b = 0;
    double omega_q = 0.0;
    double detuning = 0.0;   // omega_q - omega_a
    RegimeCheck dispersive;
    RegimeCheck rwa;
};

struct RegimeReport {
    RegimeThresholds thresholds;
    RegimeCheck small_flux;
    std::vector<RegimeRow> rows;
    // Magnitude of the (b^2 + b^dag^2) sigma_z term dropped by the secular
    // approximation, relative to the qubit splitting: phi_b^2 / 2.
    double dropped_secular_ratio = 0.0;

    bool all_pass() const noexcept;
};

RegimeReport regime_report(const CircuitModel& model, int n_b_max, const RegimeThresholds& th = {});
RegimeReport regime_report(const DeviceParams& p, const EffectiveParams& eff, int n_b_max,
                           const RegimeThresholds& th = {});

// --- cross-phase figure of merit -----------------------------------------

struct CrossPhase {
    double radians;
    double cycles;
};

/// chi * tau; throws InvalidArgument for tau < 0.
CrossPhase cross_phase(double chi, double tau);

} // namespace cqed
