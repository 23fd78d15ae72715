#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cqed/dynamics.hpp"
#include "cqed/errors.hpp"
#include "cqed/spectrum.hpp"

#include <cmath>

using namespace cqed;

namespace {

EffectiveParams ratio3()
{
    EffectiveParams e;
    e.chi = 1.0;
    e.omega_a_prime = 3.0;
    return e;
}

OperatorMatrix plus_state(const FockCutoff& cut, BasisLabel a, BasisLabel b)
{
    const std::pair<BasisLabel, cplx> terms[] = {{a, 1.0}, {b, 1.0}};
    return density_matrix(superposition(cut, terms));
}

} // namespace

TEST_CASE("time grid")
{
    const double ok[] = {0.0, 0.5, 2.0};
    CHECK_NOTHROW(require_time_grid(ok));
    const double neg[] = {-1.0, 0.0};
    CHECK_THROWS_AS(require_time_grid(neg), InvalidArgument);
    const double flat[] = {1.0, 1.0};
    CHECK_THROWS_AS(require_time_grid(flat), InvalidArgument);
}

TEST_CASE("two-level coherence against closed form")
{
    const FockCutoff cut(1, 1);
    const BasisLabel a{0, 0, 0}, b{1, 2 - 2, 0};
    const OperatorMatrix rho0 = plus_state(cut, a, b);
    const SpectralDensity d = SpectralDensity::ohmic(0.1, 1.0, 1.0);
    const std::vector<double> t{0.0, 0.5, 3.0, 20.0};
    const ElementPair pair{a, b};
    const auto traj = evolve_reduced(rho0, ratio3(), d, BathState::zero_temperature(), t, std::span(&pair, 1));
    REQUIRE(traj.records.size() == 1);
    const double ea = eigenvalue(a, ratio3()), eb = eigenvalue(b, ratio3());
    CHECK(traj.records[0].delta_e == doctest::Approx(ea - eb));
    for (std::size_t k = 0; k < t.size(); ++k) {
        const double q1 = 0.1 * std::atan(t[k]), q2 = 0.05 * std::log1p(t[k] * t[k]);
        const cplx expect = 0.5 * std::polar(std::exp(-(ea - eb) * (ea - eb) * q2),
                                             -(ea - eb) * t[k] - (ea * ea - eb * eb) * q1);
        CHECK(std::abs(traj.snapshots[k](a, b) - expect) < 1e-9);
        CHECK(traj.snapshots[k].entries.trace().real() == doctest::Approx(1.0));
    }
}

TEST_CASE("degenerate coherence is untouched")
{
    const FockCutoff cut(4, 4);
    const BasisLabel a{0, 3, 0}, b{1, 3, 1};
    const OperatorMatrix rho0 = plus_state(cut, a, b);
    const SpectralDensity d = SpectralDensity::ohmic(0.1, 1.0, 1.0);
    const std::vector<double> t{0.0, 5.0, 50.0};
    EvolveOptions o;
    o.workers = 3;
    const auto traj = evolve_reduced(rho0, ratio3(), d, BathState::with_beta(1.0), t, {}, o);
    REQUIRE(traj.records.size() == 1);
    for (const auto& s : traj.snapshots) CHECK(std::abs(s(a, b) - cplx(0.5)) < 1e-15);
}

TEST_CASE("worker count does not change the result")
{
    const FockCutoff cut(2, 2);
    std::vector<std::pair<BasisLabel, cplx>> terms;
    for (const auto& l : all_labels(cut)) terms.push_back({l, cplx(1.0 + l.m, 0.3 * l.n - l.i)});
    const OperatorMatrix rho0 = density_matrix(superposition(cut, terms));
    const SpectralDensity d = SpectralDensity::ohmic(0.05, 1.0, 2.0);
    std::vector<double> t;
    for (int k = 0; k < 17; ++k) t.push_back(0.3 * k);
    EvolveOptions one, many;
    many.workers = 4;
    const auto a = evolve_reduced(rho0, ratio3(), d, BathState::zero_temperature(), t, {}, one);
    const auto b = evolve_reduced(rho0, ratio3(), d, BathState::zero_temperature(), t, {}, many);
    for (std::size_t k = 0; k < t.size(); ++k) CHECK(max_abs(a.snapshots[k].entries - b.snapshots[k].entries) == 0.0);
    CHECK(a.records.size() == std::min<std::size_t>(kMaxDefaultRecords, cut.dim() * (cut.dim() - 1) / 2));
}

TEST_CASE("invalid inputs")
{
    const FockCutoff cut(1, 1);
    Matrix bad = Matrix::Identity(8, 8);
    const SpectralDensity d = SpectralDensity::ohmic(0.1, 1.0, 1.0);
    const double t[] = {0.0, 1.0};
    CHECK_THROWS_AS(evolve_reduced(OperatorMatrix(cut, bad), ratio3(), d, BathState::zero_temperature(), t),
                    InvalidArgument);
    const ElementPair outside{{0, 0, 0}, {2, 0, 0}};
    CHECK_THROWS_AS(evolve_reduced(plus_state(cut, {0, 0, 0}, {0, 0, 1}), ratio3(), d, BathState::zero_temperature(),
                                   t, std::span(&outside, 1)),
                    InvalidArgument);
}

TEST_CASE("discrete reservoir integrals")
{
    const FiniteBathSpec spec{{{1.0, 0.1, 5, 0.0}, {2.0, 0.2, 5, 0.5}}};
    const auto q = discrete_reservoir_integrals(spec, 0.7);
    CHECK(q.q1 == doctest::Approx(0.01 * std::sin(0.7) + 0.01 * std::sin(1.4)));
    CHECK(q.q2 == doctest::Approx(2 * 0.01 * std::pow(std::sin(0.35), 2) + 2 * 0.01 * std::pow(std::sin(0.7), 2) * 2.0));
}

TEST_CASE("finite bath oracle")
{
    const FockCutoff cut(1, 1);
    EffectiveParams e;
    e.chi = 0.1;
    e.omega_a_prime = 0.3;
    const std::pair<BasisLabel, cplx> terms[] = {{{0, 0, 0}, 1.0}, {{1, 1, 0}, 1.0}, {{1, 0, 1}, 1.0}};
    const OperatorMatrix rho0 = density_matrix(superposition(cut, terms));
    const std::vector<double> t{1.0, 4.0, 10.0};
    const FiniteBathSpec spec{{{1.0, 0.08, 8, 0.0}, {1.7, 0.1, 8, 0.0}}};

    const auto dbl = finite_bath_oracle(rho0, e, spec, t);
    const auto ext = finite_bath_oracle(rho0, e, spec, t, {2, OraclePrecision::Extended});
    CHECK(dbl.max_deviation < 1e-6);
    CHECK(ext.max_deviation < 1e-6);
    CHECK(dbl.displacement_metric == doctest::Approx(0.6 * 0.08));  // max|E| = 0.6 at (1, 0, 1)
    for (std::size_t k = 0; k < t.size(); ++k) {
        CHECK(max_abs(dbl.oracle[k] - ext.oracle[k]) < 1e-12);
        CHECK(max_abs(dbl.analytic[k] - ext.analytic[k]) < 1e-12);
    }

    FiniteBathSpec big = spec;
    for (auto& m : big.modes) m.fock_cutoff = 200;
    CHECK_THROWS_AS(finite_bath_oracle(rho0, e, big, t), CapacityError);
    CHECK_THROWS_AS(finite_bath_oracle(rho0, e, FiniteBathSpec{}, t), InvalidArgument);
}

TEST_CASE("dispersive check")
{
    CircuitModel m;
    m.omega_a = 1.0;
    m.josephson = 0.05;
    m.g_a = 0.05 * 0.9;
    const FockCutoff cut(4, 1);
    const std::pair<BasisLabel, cplx> terms[] = {{{0, 0, 0}, 1.0}, {{0, 0, 1}, 1.0}};
    std::vector<double> t;
    for (int k = 1; k <= 200; ++k) t.push_back(0.1 * k);
    const auto r = dispersive_check(superposition(cut, terms), m, t);
    CHECK(r.min_fidelity > 0.99);
    CHECK(r.min_fidelity <= 1.0 + 1e-12);
    CHECK(r.mean_photons_a == 0.0);
}

TEST_CASE("observables")
{
    const FockCutoff cut(1, 1);
    const OperatorMatrix rho0 = plus_state(cut, {0, 0, 0}, {0, 0, 1});
    const SpectralDensity d = SpectralDensity::ohmic(0.1, 1.0, 1.0);
    const std::vector<double> t{0.0, 2.0, 8.0};
    const auto traj = evolve_reduced(rho0, ratio3(), d, BathState::zero_temperature(), t);
    const auto pur = observables(traj, Observable::Purity);
    const auto coh = observables(traj, Observable::QubitCoherence);
    const auto fid = observables(traj, Observable::SubsystemFidelity);
    CHECK(pur[0] == doctest::Approx(1.0));
    CHECK(coh[0] == doctest::Approx(0.5));
    CHECK(fid[0] == doctest::Approx(1.0));
    const double dmp = std::exp(-9.0 * 0.05 * std::log1p(64.0));  // dE = w'_a
    CHECK(coh[2] == doctest::Approx(0.5 * dmp).epsilon(1e-8));
    CHECK(pur[2] == doctest::Approx(0.5 + 0.5 * dmp * dmp).epsilon(1e-8));
    CHECK(parse_observable("qubit_coherence") == Observable::QubitCoherence);
    CHECK(std::string(to_string(Observable::SubsystemFidelity)) == "subsystem_fidelity");
    CHECK_THROWS(parse_observable("entropy"));
}
