#include "cqed/bath.hpp"

#include "cqed/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace cqed {

SpectralDensity SpectralDensity::ohmic(double alpha, double s, double omega_c)
{
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw InvalidArgument("ohmic: alpha must be >= 0");
    if (!(s > 0.0) || !std::isfinite(s)) throw InvalidArgument("ohmic: exponent s must be > 0");
    if (!(omega_c > 0.0) || !std::isfinite(omega_c)) throw InvalidArgument("ohmic: omega_c must be > 0");
    SpectralDensity d;
    d.family_ = Family::Ohmic;
    d.alpha_ = alpha;
    d.s_ = s;
    d.omega_c_ = omega_c;
    d.low_prefactor_ = alpha * std::pow(omega_c, 1.0 - s);
    return d;
}

SpectralDensity SpectralDensity::tabulated(std::vector<double> omega, std::vector<double> value)
{
    if (omega.size() != value.size() || omega.size() < 2)
        throw InvalidArgument("tabulated spectral density: need >= 2 (omega, value) samples");
    for (std::size_t k = 0; k < omega.size(); ++k) {
        if (!std::isfinite(omega[k]) || !std::isfinite(value[k]))
            throw InvalidArgument("tabulated spectral density: non-finite sample");
        if (omega[k] < 0.0) throw InvalidArgument("tabulated spectral density: negative frequency");
        if (value[k] < 0.0) throw InvalidArgument("tabulated spectral density: D(omega) must be >= 0");
        if (k > 0 && !(omega[k] > omega[k - 1]))
            throw InvalidArgument("tabulated spectral density: omega must be strictly increasing");
    }

    SpectralDensity d;
    d.family_ = Family::Tabulated;
    d.omega_c_ = omega.back();
    d.s_ = 1.0;
    d.low_prefactor_ = 0.0;
    if (omega[0] == 0.0) {
        if (value[0] > 0.0)
            throw IntegrabilityError("tabulated spectral density: D(0) > 0 means low-frequency exponent s = 0; "
                                     "Q1 and the finite-temperature Q2 diverge (need s > 0)");
        d.low_prefactor_ = value[1] / omega[1];
    } else if (value[0] > 0.0 && value[1] > 0.0) {
        const double s = std::log(value[1] / value[0]) / std::log(omega[1] / omega[0]);
        if (!(s > 0.0)) {
            std::ostringstream os;
            os << "tabulated spectral density: low-frequency exponent s = " << s
               << " <= 0; Q1 and the finite-temperature Q2 diverge (need s > 0)";
            throw IntegrabilityError(os.str());
        }
        d.s_ = s;
        d.low_prefactor_ = value[0] / std::pow(omega[0], s);
    }
    d.omega_ = std::move(omega);
    d.value_ = std::move(value);
    return d;
}

SpectralDensity SpectralDensity::load_table(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open spectral density table '" + path.string() + "'");
    std::vector<double> w, v;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        double a = 0.0, b = 0.0;
        if (!(ls >> a)) continue;  // blank line
        std::string extra;
        if (!(ls >> b) || (ls >> extra))
            throw InvalidArgument("spectral density table '" + path.string() + "' line " + std::to_string(lineno) +
                                  ": expected two numeric columns");
        w.push_back(a);
        v.push_back(b);
    }
    return tabulated(std::move(w), std::move(v));
}

double SpectralDensity::operator()(double omega) const
{
    if (omega <= 0.0) return 0.0;
    if (family_ == Family::Ohmic) return low_prefactor_ * std::pow(omega, s_) * std::exp(-omega / omega_c_);
    if (omega < omega_.front()) return low_prefactor_ * std::pow(omega, s_);
    if (omega >= omega_.back()) return omega == omega_.back() ? value_.back() : 0.0;
    const auto hi = std::upper_bound(omega_.begin(), omega_.end(), omega);
    const std::size_t k = std::size_t(hi - omega_.begin());
    const double w0 = omega_[k - 1], w1 = omega_[k];
    const double f = (omega - w0) / (w1 - w0);
    return value_[k - 1] + f * (value_[k] - value_[k - 1]);
}

double SpectralDensity::scale() const noexcept { return omega_c_; }

BathState BathState::with_beta(double beta)
{
    if (!(beta > 0.0) || !std::isfinite(beta)) throw InvalidArgument("BathState: beta must be positive and finite");
    return BathState(beta, false);
}

BathState BathState::from_temperature(double kelvin, double hbar, double k_B)
{
    if (kelvin == 0.0) return zero_temperature();
    if (!(kelvin > 0.0) || !std::isfinite(kelvin)) throw InvalidArgument("BathState: temperature must be >= 0");
    return with_beta(hbar / (k_B * kelvin));
}

double BathState::coth_half(double omega) const
{
    if (zero_) return 1.0;
    return 1.0 / std::tanh(0.5 * beta_ * omega);
}

namespace {

enum class Kernel { Sine, Damping };

double kernel_value(Kernel k, const BathState* bath, double w, double t)
{
    if (k == Kernel::Sine) return std::sin(w * t);
    const double s = std::sin(0.5 * w * t);
    return 2.0 * s * s * bath->coth_half(w);
}

// Leading small-w contribution of the integral over [0, eps].
double endpoint_series(Kernel k, const BathState* bath, const SpectralDensity& d, double eps, double t)
{
    const double a = d.low_prefactor(), s = d.low_exponent();
    if (a == 0.0) return 0.0;
    if (k == Kernel::Sine) return a * t * std::pow(eps, s) / s;
    if (bath->is_zero_temperature()) return a * t * t * std::pow(eps, s + 1.0) / (2.0 * (s + 1.0));
    return a * t * t * std::pow(eps, s) / (bath->beta() * s);
}

// Envelope cut: beyond this the exponential cutoff leaves < ~1e-20 relative weight.
double envelope_limit(const SpectralDensity& d)
{
    double x = 46.0;
    for (int it = 0; it < 8; ++it) x = 46.0 + std::max(0.0, d.exponent() - 2.0) * std::log(x);
    return x * d.omega_c();
}

constexpr std::size_t kMaxInitialPanels = 50000;

Integral reservoir_integral(Kernel kernel, const SpectralDensity& d, const BathState* bath, double t,
                            const quadrature::Options& opts)
{
    if (t == 0.0) return {};
    const double at = std::abs(t);
    const double scale = d.scale();
    double period_step = std::numbers::pi / at;  // half an oscillation period
    double step = std::min(period_step, scale);

    double eps = 1e-8 * std::min(scale, 1.0 / at);
    if (bath != nullptr && !bath->is_zero_temperature()) eps = std::min(eps, 1e-8 / bath->beta());

    auto integrand = [&](double w) { return d(w) / (w * w) * kernel_value(kernel, bath, w, at); };

    const double upper = d.family() == SpectralDensity::Family::Ohmic ? scale : d.table_omega().back();
    const double span = d.family() == SpectralDensity::Family::Ohmic ? envelope_limit(d) : upper;
    if (span / step > double(kMaxInitialPanels)) step = span / double(kMaxInitialPanels);

    // Geometric breakpoints resolve the w^(s-1) endpoint behaviour, then the
    // oscillation grid; table nodes are kinks of the interpolant.
    std::vector<double> bp{eps};
    for (double g = eps * 10.0; g < std::min(step, upper); g *= 10.0) bp.push_back(g);
    for (double w = std::min(step, upper); w < upper; w += step) bp.push_back(w);
    bp.push_back(upper);
    if (d.family() == SpectralDensity::Family::Tabulated) {
        for (double w : d.table_omega())
            if (w > eps && w < upper) bp.push_back(w);
    }
    std::sort(bp.begin(), bp.end());
    bp.erase(std::unique(bp.begin(), bp.end(), [](double x, double y) { return std::abs(x - y) <= 1e-14 * y; }),
             bp.end());

    Integral head = quadrature::integrate(integrand, bp, opts);
    const double series = endpoint_series(kernel, bath, d, eps, at);

    Integral total = head;
    total.value += series;

    if (d.family() == SpectralDensity::Family::Ohmic) {
        // Tail [w_c, inf) through w = w_c / (1 - u), u in [0, 1).
        const double wc = scale;
        auto mapped = [&](double u) {
            const double one_minus = 1.0 - u;
            const double w = wc / one_minus;
            return integrand(w) * wc / (one_minus * one_minus);
        };
        std::vector<double> ubp{0.0};
        for (double w = wc + step; w < span; w += step) ubp.push_back(1.0 - wc / w);
        ubp.push_back(1.0 - wc / span);
        ubp.push_back(1.0);
        ubp.erase(std::unique(ubp.begin(), ubp.end()), ubp.end());
        const Integral tail = quadrature::integrate(mapped, ubp, opts);
        total.value += tail.value;
        total.error += tail.error;
        total.abs_value += tail.abs_value;
        total.panels += tail.panels;
        total.converged = total.converged && tail.converged;
    }
    if (kernel == Kernel::Sine && t < 0.0) total.value = -total.value;
    return total;
}

} // namespace

Integral q1(const SpectralDensity& d, double t, const quadrature::Options& opts)
{
    return reservoir_integral(Kernel::Sine, d, nullptr, t, opts);
}

Integral q2(const SpectralDensity& d, const BathState& bath, double t, const quadrature::Options& opts)
{
    if (!bath.is_zero_temperature() && !(d.low_exponent() > 0.0)) {
        std::ostringstream os;
        os << "Q2 diverges at finite temperature for low-frequency exponent s = " << d.low_exponent();
        throw IntegrabilityError(os.str());
    }
    return reservoir_integral(Kernel::Damping, d, &bath, t, opts);
}

ReservoirIntegrals reservoir_integrals(const SpectralDensity& d, const BathState& bath, double t,
                                       const quadrature::Options& opts)
{
    return {q1(d, t, opts).value, q2(d, bath, t, opts).value};
}

std::complex<double> r_factor(double e1, double e2, const ReservoirIntegrals& q)
{
    const double gamma = damping(e1, e2, q.q2);
    const double dphi = phase_shift(e1, e2, q.q1);
    if (gamma == 0.0 && dphi == 0.0) return {1.0, 0.0};
    return std::polar(std::exp(-gamma), -dphi);
}

double phase_shift(double e1, double e2, const SpectralDensity& d, double t)
{
    return phase_shift(e1, e2, q1(d, t).value);
}

double damping(double e1, double e2, const SpectralDensity& d, const BathState& bath, double t)
{
    return damping(e1, e2, q2(d, bath, t).value);
}

std::complex<double> r_factor(double e1, double e2, const SpectralDensity& d, const BathState& bath, double t)
{
    return r_factor(e1, e2, reservoir_integrals(d, bath, t));
}

} // namespace cqed
