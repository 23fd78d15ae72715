#include "cqed/device.hpp"

#include "cqed/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace cqed {

DispersiveConstants dispersive_constants(double g_a, double phi_b, double omega_a, double josephson)
{
    if (!(omega_a > 0.0)) throw InvalidArgument("dispersive_constants: omega_a must be positive");
    const double g2 = g_a * g_a;
    const double w2 = omega_a * omega_a;
    const double chi = 2.0 * g2 * phi_b * phi_b * josephson / w2;
    const double wp = g2 / omega_a + 2.0 * g2 * josephson / w2 - chi / 2.0;
    return {wp, chi};
}

void validate(const DeviceParams& p)
{
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw InvalidArgument(std::string("DeviceParams: ") + name + " must be positive and finite");
    };
    positive(p.E_C, "E_C");
    positive(p.E_J_max, "E_J_max");
    positive(p.omega_a, "omega_a");
    positive(p.omega_b, "omega_b");
    positive(p.L_a, "L_a");
    positive(p.L_b, "L_b");
    positive(p.c_cap, "c_cap");
    positive(p.l_ind, "l_ind");
    positive(p.C_g, "C_g");
    positive(p.C_a, "C_a");
    positive(p.d_dist, "d_dist");
    if (!(p.S_loop >= 0.0)) throw InvalidArgument("DeviceParams: S_loop must be non-negative");
    positive(p.constants.hbar, "hbar");
    positive(p.constants.e, "e");
    positive(p.constants.mu0, "mu0");
    positive(p.constants.flux_quantum, "flux_quantum");
    positive(p.constants.k_B, "k_B");
    if (!std::isfinite(p.V_g_dc) || !std::isfinite(p.Phi_e))
        throw InvalidArgument("DeviceParams: V_g_dc and Phi_e must be finite");
}

EffectiveParams effective_couplings(const DeviceParams& p)
{
    validate(p);
    const PhysicalConstants& k = p.constants;

    // Zero-point voltage of TLRA at the antinode and flux of TLRB through the loop.
    const double v_rms = std::sqrt(k.hbar * p.omega_a / (p.L_a * p.c_cap));
    const double i_rms = std::sqrt(k.hbar * p.omega_b / (p.L_b * p.l_ind));

    EffectiveParams eff;
    eff.g_a = 2.0 * p.E_C * p.C_a * v_rms / (k.hbar * k.e);
    eff.phi_b = k.mu0 * p.S_loop * i_rms / (2.0 * p.d_dist * k.flux_quantum);
    eff.phi_e = std::numbers::pi * p.Phi_e / k.flux_quantum;
    eff.n_g_dc = p.C_g * p.V_g_dc / (2.0 * k.e);
    eff.omega_a = p.omega_a;
    eff.omega_b = p.omega_b;
    const auto dc = dispersive_constants(eff.g_a, eff.phi_b, p.omega_a, p.E_J_max / k.hbar);
    eff.omega_a_prime = dc.omega_a_prime;
    eff.chi = dc.chi;
    return eff;
}

EffectiveParams effective_params(const CircuitModel& model)
{
    EffectiveParams eff;
    eff.g_a = model.g_a;
    eff.phi_b = model.phi_b;
    eff.phi_e = model.phi_e;
    eff.n_g_dc = model.n_g_dc;
    eff.omega_a = model.omega_a;
    eff.omega_b = model.omega_b;
    const auto dc = dispersive_constants(model.g_a, model.phi_b, model.omega_a, model.josephson);
    eff.omega_a_prime = dc.omega_a_prime;
    eff.chi = dc.chi;
    return eff;
}

CircuitModel circuit_model(const DeviceParams& p, const EffectiveParams& eff)
{
    CircuitModel m;
    m.omega_a = p.omega_a;
    m.omega_b = p.omega_b;
    m.charging = p.E_C / p.constants.hbar;
    m.josephson = p.E_J_max / p.constants.hbar;
    m.n_g_dc = eff.n_g_dc;
    m.g_a = eff.g_a;
    m.phi_b = eff.phi_b;
    m.phi_e = eff.phi_e;
    return m;
}

double qubit_frequency(double phi_b, double josephson, int n_b)
{
    return 2.0 * josephson * (1.0 - phi_b * phi_b * (1.0 + 2.0 * n_b) / 2.0);
}

const char* to_string(RegimeFlag f) noexcept
{
    switch (f) {
    case RegimeFlag::Pass: return "pass";
    case RegimeFlag::Warn: return "warn";
    case RegimeFlag::Fail: return "fail";
    }
    return "?";
}

namespace {

RegimeCheck classify(double ratio, double threshold)
{
    if (!std::isfinite(ratio)) return {std::numeric_limits<double>::infinity(), RegimeFlag::Fail};
    return {ratio, ratio < threshold ? RegimeFlag::Pass : RegimeFlag::Warn};
}

} // namespace

bool RegimeReport::all_pass() const noexcept
{
    if (small_flux.flag != RegimeFlag::Pass) return false;
    for (const auto& r : rows)
        if (r.dispersive.flag != RegimeFlag::Pass || r.rwa.flag != RegimeFlag::Pass) return false;
    return true;
}

RegimeReport regime_report(const CircuitModel& model, int n_b_max, const RegimeThresholds& th)
{
    constexpr double inf = std::numeric_limits<double>::infinity();
    RegimeReport rep;
    rep.thresholds = th;
    rep.small_flux = classify(std::abs(model.phi_b), th.small_flux);
    rep.dropped_secular_ratio = model.phi_b * model.phi_b / 2.0;
    for (int n = 0; n <= n_b_max; ++n) {
        RegimeRow row;
        row.n_b = n;
        row.omega_q = qubit_frequency(model.phi_b, model.josephson, n);
        row.detuning = row.omega_q - model.omega_a;
        const double g = std::abs(model.g_a);
        const double det = std::abs(row.detuning);
        row.dispersive = classify(det > 0.0 ? g / det : (g > 0.0 ? inf : 0.0), th.dispersive);
        if (det == 0.0) row.dispersive = {inf, RegimeFlag::Fail};
        const double sum = row.omega_q + model.omega_a;
        row.rwa = classify(sum > 0.0 ? std::max(det, g) / sum : inf, th.rwa);
        rep.rows.push_back(row);
    }
    return rep;
}

RegimeReport regime_report(const DeviceParams& p, const EffectiveParams& eff, int n_b_max,
                           const RegimeThresholds& th)
{
    return regime_report(circuit_model(p, eff), n_b_max, th);
}

CrossPhase cross_phase(double chi, double tau)
{
    if (!(tau >= 0.0)) throw InvalidArgument("cross_phase: tau must be non-negative");
    const double rad = chi * tau;
    return {rad, rad / (2.0 * std::numbers::pi)};
}

} // namespace cqed
