#include "cqed/validation.hpp"

#include "cqed/bath.hpp"
#include "cqed/device.hpp"
#include "cqed/dynamics.hpp"
#include "cqed/hamiltonians.hpp"
#include "cqed/hilbert.hpp"
#include "cqed/spectrum.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

namespace cqed {
namespace {

class Suite {
public:
    void add(std::string module, std::string check, double residual, double tol, std::string detail = {})
    {
        const bool pass = std::isfinite(residual) && residual <= tol;
        rows_.push_back({std::move(module), std::move(check), residual, tol, pass, std::move(detail)});
    }

    // A check that threw is a failure with the message as detail.
    void guarded(const std::string& module, const std::string& check, const std::function<void()>& body)
    {
        try {
            body();
        } catch (const std::exception& e) {
            rows_.push_back({module, check, INFINITY, 0.0, false, std::string("exception: ") + e.what()});
        }
    }

    std::vector<ValidationRow> take() { return std::move(rows_); }

private:
    std::vector<ValidationRow> rows_;
};

double rel(double a, double b)
{
    const double s = std::max(std::abs(a), std::abs(b));
    return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

Matrix random_density(int dim, std::mt19937_64& rng)
{
    std::normal_distribution<double> n(0.0, 1.0);
    Matrix g(dim, dim);
    for (int c = 0; c < dim; ++c)
        for (int r = 0; r < dim; ++r) g(r, c) = cplx(n(rng), n(rng));
    Matrix rho = g * g.adjoint();
    rho /= rho.trace();
    return rho;
}

CircuitModel random_model(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    CircuitModel m;
    m.omega_a = 1.0;
    m.omega_b = 0.5 + u(rng);
    m.charging = 0.5 + u(rng);
    m.josephson = 0.02 + 0.05 * u(rng);
    m.g_a = 0.005 + 0.01 * u(rng);
    m.phi_b = 0.02 + 0.15 * u(rng);
    return m;
}

std::vector<double> log_grid(double lo, double hi, int n)
{
    std::vector<double> t(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) t[std::size_t(k)] = lo * std::pow(hi / lo, double(k) / double(n - 1));
    return t;
}

double dispersive_infidelity(double g_over_delta)
{
    CircuitModel m;
    m.omega_a = 1.0;
    m.josephson = 0.05;  // omega_q = 0.1 omega_a
    m.phi_b = 0.0;
    const double delta = std::abs(qubit_frequency(0.0, m.josephson, 0) - m.omega_a);
    m.g_a = g_over_delta * delta;
    const FockCutoff cut(4, 1);
    const std::pair<BasisLabel, cplx> terms[] = {{{0, 0, 0}, 1.0}, {{0, 0, 1}, 1.0}};
    const StateVector psi = superposition(cut, terms);
    std::vector<double> t;
    const double stop = 3.0 * 2.0 * std::numbers::pi / delta;
    for (int k = 1; k <= 600; ++k) t.push_back(stop * k / 600.0);
    return 1.0 - dispersive_check(psi, m, t).min_fidelity;
}

} // namespace

bool all_pass(const std::vector<ValidationRow>& rows) noexcept
{
    return std::all_of(rows.begin(), rows.end(), [](const ValidationRow& r) { return r.pass; });
}

std::vector<ValidationRow> run_validation(const ValidationOptions& opts)
{
    Suite s;
    const double tol = opts.tol;
    std::mt19937_64 rng(20240611);

    // --- hilbert ----------------------------------------------------------
    s.guarded("hilbert", "ladder_number_operator", [&] {
        const int n = 30;
        const Matrix a = annihilation(n);
        const Matrix na = a.adjoint() * a;
        Matrix expect = Matrix::Zero(n + 1, n + 1);
        for (int k = 0; k < n; ++k) expect(k, k) = double(k);
        expect(n, n) = na(n, n);  // top level is a truncation artifact of a'a
        s.add("hilbert", "ladder_number_operator", max_abs(na - expect), tol, "k < n_max, n_max = 30");
    });
    s.guarded("hilbert", "kron_index_consistency", [&] {
        const FockCutoff cut(3, 4);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        Matrix dq = Matrix::Zero(2, 2), da = Matrix::Zero(4, 4), db = Matrix::Zero(5, 5);
        for (int k = 0; k < 2; ++k) dq(k, k) = u(rng);
        for (int k = 0; k < 4; ++k) da(k, k) = u(rng);
        for (int k = 0; k < 5; ++k) db(k, k) = u(rng);
        const OperatorMatrix t = tensor3(dq, da, db, cut);
        double worst = 0.0;
        for (const auto& l : all_labels(cut))
            worst = std::max(worst, std::abs(t(l, l) - dq(l.i, l.i) * da(l.m, l.m) * db(l.n, l.n)));
        s.add("hilbert", "kron_index_consistency", worst, tol);
    });
    s.guarded("hilbert", "partial_trace_composition", [&] {
        const int dims[3] = {2, 3, 3};
        const Matrix rho = random_density(18, rng);
        const bool keep_qa[3] = {true, true, false}, keep_q[3] = {true, false, false};
        const int dims2[2] = {2, 3};
        const bool keep_q2[2] = {true, false};
        const Matrix step = partial_trace(partial_trace(rho, dims, keep_qa), dims2, keep_q2);
        const Matrix once = partial_trace(rho, dims, keep_q);
        s.add("hilbert", "partial_trace_composition", max_abs(step - once), 1e-12);
    });
    s.guarded("hilbert", "density_checks", [&] {
        const Matrix rho = random_density(8, rng);
        const DensityCheck ok = check_density(rho);
        Matrix bad = rho;
        bad(0, 0) += 1.0;
        bad(1, 1) -= 1.0;  // trace kept, positivity broken
        const DensityCheck nok = check_density(bad);
        const bool correct = ok.valid && !nok.valid;
        s.add("hilbert", "density_checks", correct ? std::max(ok.trace_error, ok.hermiticity) : INFINITY, tol,
              "valid state accepted, non-positive matrix rejected");
    });

    // --- device -----------------------------------------------------------
    s.guarded("device", "dispersive_coefficient_identity", [&] {
        double worst = 0.0;
        for (int draw = 0; draw < 10; ++draw) {
            const CircuitModel m = random_model(rng);
            const EffectiveParams e = effective_params(m);
            for (int n = 0; n <= 10; ++n) {
                const double wq = qubit_frequency(m.phi_b, m.josephson, n);
                const double k = (m.g_a * m.g_a / m.omega_a) * (1.0 + wq / m.omega_a);
                worst = std::max(worst, rel(k, e.omega_a_prime - e.chi * n));
            }
        }
        s.add("device", "dispersive_coefficient_identity", worst, tol,
              "(g^2/w_a)(1 + w_q(n)/w_a) = w'_a - chi n, n = 0..10, 10 draws");
    });
    s.guarded("device", "chi_scaling", [&] {
        const double g = 0.3, p = 0.1, w = 2.0, ej = 0.7;
        const double c0 = dispersive_constants(g, p, w, ej).chi;
        const double worst = std::max({rel(dispersive_constants(2 * g, p, w, ej).chi, 4 * c0),
                                       rel(dispersive_constants(g, 2 * p, w, ej).chi, 4 * c0),
                                       rel(dispersive_constants(g, p, w, 2 * ej).chi, 2 * c0),
                                       rel(dispersive_constants(g, p, 2 * w, ej).chi, c0 / 4)});
        s.add("device", "chi_scaling", worst, tol, "g^2, phi_b^2, E_J, 1/w_a^2");
    });
    s.guarded("device", "cross_phase_linearity", [&] {
        const CrossPhase base = cross_phase(3.6e8, 1.6e-7);
        const double worst = std::max(rel(cross_phase(7.2e8, 1.6e-7).radians, 2 * base.radians),
                                      rel(cross_phase(3.6e8, 4.8e-7).radians, 3 * base.radians));
        s.add("device", "cross_phase_linearity", worst, tol);
    });
    s.guarded("device", "cross_phase_reference", [&] {
        const double cycles = cross_phase(3.6e8, 160e-9).cycles;
        std::ostringstream os;
        os.precision(17);
        os << "cycles = " << cycles;
        s.add("device", "cross_phase_reference", std::abs(cycles - 9.17), 0.01, os.str());
    });

    // --- hamiltonians -----------------------------------------------------
    s.guarded("hamiltonians", "chain_consistency", [&] {
        const FockCutoff cut(4, 4);
        double worst = 0.0;
        for (int draw = 0; draw < 5; ++draw) {
            const CircuitModel m = random_model(rng);
            const Matrix lhs = build_dispersive(m, cut).matrix.entries - dispersive_free_part(m, cut).entries;
            const Matrix rhs = build_diagonal(effective_params(m), cut).matrix.entries;
            worst = std::max(worst, max_abs(lhs - rhs));
        }
        s.add("hamiltonians", "chain_consistency", worst, 1e-12, "cutoffs (4,4), 5 draws, entrywise, w_a = 1");
    });
    s.guarded("hamiltonians", "full_rotated_spectra", [&] {
        const FockCutoff cut(3, 3);
        const CircuitModel m = random_model(rng);
        Eigen::SelfAdjointEigenSolver<Matrix> a(build_full(m, cut).matrix.entries, Eigen::EigenvaluesOnly);
        Eigen::SelfAdjointEigenSolver<Matrix> b(build_rotated(m, cut).matrix.entries, Eigen::EigenvaluesOnly);
        const double scale = a.eigenvalues().cwiseAbs().maxCoeff();
        s.add("hamiltonians", "full_rotated_spectra", (a.eigenvalues() - b.eigenvalues()).cwiseAbs().maxCoeff() / scale,
              1e-10);
    });
    s.guarded("hamiltonians", "quadratic_phi4_scaling", [&] {
        CircuitModel m;
        m.omega_a = 1.0;
        m.omega_b = 0.8;
        m.charging = 1.0;
        m.josephson = 0.5;
        m.g_a = 0.01;
        const FockCutoff cut(2, 10);
        m.phi_b = 0.1;
        const double r1 = quadratic_expansion_residual(m, cut);
        m.phi_b = 0.05;
        const double r2 = quadratic_expansion_residual(m, cut);
        std::ostringstream os;
        os.precision(17);
        os << "ratio = " << r1 / r2;
        s.add("hamiltonians", "quadratic_phi4_scaling", std::abs(r1 / r2 - 16.0) / 16.0, 0.2, os.str());
    });
    s.guarded("hamiltonians", "jc_conserved_quantities", [&] {
        const FockCutoff cut(4, 3);
        const CircuitModel m = random_model(rng);
        const Matrix h = build_jc(m, cut).matrix.entries;
        const Matrix nexc = tensor3(identity(2), number_operator(4), identity(4), cut).entries +
                            tensor3(sigma_plus() * sigma_minus(), identity(5), identity(4), cut).entries;
        const Matrix nb = tensor3(identity(2), identity(5), number_operator(3), cut).entries;
        const double scale = max_abs(h);
        const double worst = std::max(max_abs(h * nexc - nexc * h), max_abs(h * nb - nb * h)) / scale;
        s.add("hamiltonians", "jc_conserved_quantities", worst, tol, "[H_JC, a'a + s+s-] and [H_JC, b'b]");
    });

    // --- spectrum ---------------------------------------------------------
    s.guarded("spectrum", "eigenvalue_matches_diagonal", [&] {
        const FockCutoff cut(5, 5);
        const EffectiveParams e = effective_params(random_model(rng));
        const Matrix h = build_diagonal(e, cut).matrix.entries;
        double worst = 0.0;
        const double scale = max_abs(h);
        for (const auto& l : all_labels(cut)) {
            const auto k = Eigen::Index(flat_index(cut, l));
            worst = std::max(worst, std::abs(h(k, k) - eigenvalue(l, e)) / scale);
        }
        s.add("spectrum", "eigenvalue_matches_diagonal", worst, tol);
    });
    s.guarded("spectrum", "class_shift_scale_invariance", [&] {
        const FockCutoff cut(5, 5);
        EffectiveParams e;
        e.chi = 0.37;
        e.omega_a_prime = 3 * e.chi;
        auto levels = level_table(e, cut);
        const double tol_c = 1e-9;
        auto members = [](const std::vector<DegeneracyClass>& cs) {
            std::vector<std::vector<BasisLabel>> out;
            for (const auto& c : cs) out.push_back(c.members);
            std::sort(out.begin(), out.end());
            return out;
        };
        const auto ref = members(cluster_levels(levels, tol_c));
        auto shifted = levels, scaled = levels;
        for (auto& l : shifted) l.energy += 1.25;
        for (auto& l : scaled) l.energy *= 2.5;
        const bool same = members(cluster_levels(shifted, tol_c)) == ref &&
                          members(cluster_levels(scaled, tol_c * 2.5)) == ref;
        s.add("spectrum", "class_shift_scale_invariance", same ? 0.0 : 1.0, 0.0);
    });
    s.guarded("spectrum", "single_linkage_gaps", [&] {
        const FockCutoff cut(6, 6);
        const EffectiveParams e = effective_params(random_model(rng));
        const auto classes = dfs_find(e, cut);
        double worst = 0.0;  // > 0 means a violated gap
        double prev_hi = -INFINITY;
        for (const auto& c : classes) {
            std::vector<double> en;
            for (const auto& l : c.members) en.push_back(eigenvalue(l, e));
            std::sort(en.begin(), en.end());
            for (std::size_t k = 1; k < en.size(); ++k) worst = std::max(worst, (en[k] - en[k - 1]) - c.tolerance);
            if (std::isfinite(prev_hi)) worst = std::max(worst, c.tolerance - (en.front() - prev_hi));
            prev_hi = en.back();
        }
        s.add("spectrum", "single_linkage_gaps", std::max(worst, 0.0), 0.0, "within-class < tol, across >= tol");
    });
    s.guarded("spectrum", "zero_mode_class", [&] {
        const FockCutoff cut(5, 5);
        double bad = 0.0;
        for (int draw = 0; draw < 10; ++draw) {
            const EffectiveParams e = effective_params(random_model(rng));
            for (const auto& c : dfs_find(e, cut)) {
                const bool has_zero = std::any_of(c.members.begin(), c.members.end(),
                                                  [](const BasisLabel& l) { return l.i == 0 && l.m == 0; });
                if (!has_zero) continue;
                for (int n = 0; n <= cut.n_max_b(); ++n)
                    if (!std::binary_search(c.members.begin(), c.members.end(), BasisLabel{0, n, 0})) bad += 1.0;
                bad += std::abs(c.energy);
            }
        }
        s.add("spectrum", "zero_mode_class", bad, 0.0, "all (m=0, i=0) labels share the E = 0 class");
    });

    // --- bath -------------------------------------------------------------
    const SpectralDensity ohmic = SpectralDensity::ohmic(0.1, 1.0, 1.0);
    s.guarded("bath", "parity_and_origin", [&] {
        double worst = 0.0;
        const BathState th = BathState::with_beta(1.0);
        for (double t : {0.3, 2.0, 11.0}) {
            worst = std::max(worst, std::abs(q1(ohmic, -t).value + q1(ohmic, t).value));
            worst = std::max(worst, std::abs(q2(ohmic, th, -t).value - q2(ohmic, th, t).value));
            worst = std::max(worst, std::max(0.0, -q2(ohmic, th, t).value));
        }
        worst = std::max({worst, std::abs(q1(ohmic, 0.0).value), std::abs(q2(ohmic, th, 0.0).value)});
        s.add("bath", "parity_and_origin", worst, 1e-12, "Q1 odd, Q2 even and >= 0, both 0 at t = 0");
    });
    s.guarded("bath", "ohmic_closed_form", [&] {
        double worst = 0.0;
        const BathState zero = BathState::zero_temperature();
        for (double t : log_grid(1e-3, 50.0, 50)) {
            worst = std::max(worst, rel(q1(ohmic, t).value, 0.1 * std::atan(t)));
            worst = std::max(worst, rel(q2(ohmic, zero, t).value, 0.05 * std::log1p(t * t)));
        }
        s.add("bath", "ohmic_closed_form", worst, 1e-6, "s = 1, T = 0, 50 log-spaced t in [1e-3, 50]/w_c");
    });
    s.guarded("bath", "temperature_monotonicity", [&] {
        double worst = 0.0;
        const BathState hot = BathState::with_beta(0.5), cold = BathState::with_beta(2.0);
        for (double t : log_grid(1e-2, 50.0, 20))
            worst = std::max(worst, q2(ohmic, cold, t).value - q2(ohmic, hot, t).value);
        s.add("bath", "temperature_monotonicity", std::max(worst, 0.0), 0.0, "Q2(beta=0.5) >= Q2(beta=2)");
    });
    s.guarded("bath", "r_factor_modulus", [&] {
        double worst = 0.0;
        const ReservoirIntegrals q{0.3, 0.7};
        for (double e1 : {-2.0, 0.0, 0.5, 3.0})
            for (double e2 : {-2.0, 0.0, 0.5, 3.0}) {
                const double m = std::abs(r_factor(e1, e2, q));
                worst = std::max(worst, e1 == e2 ? std::abs(m - 1.0) : std::max(0.0, m - 1.0));
            }
        s.add("bath", "r_factor_modulus", worst, 1e-15, "|r| <= 1, = 1 on degenerate pairs");
    });
    s.guarded("bath", "quadrature_stability", [&] {
        double worst = 0.0;
        const BathState th = BathState::with_beta(1.0);
        const SpectralDensity sub = SpectralDensity::ohmic(0.1, 0.5, 1.0);
        for (double t : {0.5, 5.0, 40.0}) {
            quadrature::Options lo, hi;
            lo.rel_tol = 1e-7;
            hi.rel_tol = 5e-8;
            for (const auto& d : {ohmic, sub}) {
                const Integral a = q1(d, t, lo), b = q1(d, t, hi);
                const Integral c = q2(d, th, t, lo), e = q2(d, th, t, hi);
                worst = std::max(worst, std::abs(a.value - b.value) / std::max(a.error, 1e-300));
                worst = std::max(worst, std::abs(c.value - e.value) / std::max(c.error, 1e-300));
            }
        }
        s.add("bath", "quadrature_stability", worst, 1.0, "|Q(tol/2) - Q(tol)| / error estimate");
    });

    // --- dynamics ---------------------------------------------------------
    EffectiveParams ratio3;
    ratio3.chi = 1.0;
    ratio3.omega_a_prime = 3.0;
    s.guarded("dynamics", "exact_solution_factorisation", [&] {
        const FockCutoff cut(2, 3);
        const Matrix rho = random_density(int(cut.dim()), rng);
        std::vector<double> en;
        for (const auto& l : all_labels(cut)) en.push_back(eigenvalue(l, ratio3));
        const ReservoirIntegrals q{0.21, 0.09};
        const double t = 1.7;
        const Matrix out = apply_dephasing(rho, en, t, q);
        double worst = 0.0;
        for (Eigen::Index c = 0; c < out.cols(); ++c)
            for (Eigen::Index r = 0; r < out.rows(); ++r) {
                const double ek = en[std::size_t(r)], el = en[std::size_t(c)];
                const cplx free = std::polar(1.0, -(ek - el) * t);
                const cplx shift = std::polar(1.0, -phase_shift(ek, el, q.q1));
                const double damp = std::exp(-damping(ek, el, q.q2));
                worst = std::max(worst, std::abs(out(r, c) - rho(r, c) * free * shift * damp));
            }
        s.add("dynamics", "exact_solution_factorisation", worst, 1e-14);
    });
    s.guarded("dynamics", "dfs_protection", [&] {
        const FockCutoff cut(4, 4);
        std::vector<std::pair<BasisLabel, cplx>> terms;
        for (int m = 0; m <= 4; ++m)
            for (int i = 0; i <= 1; ++i) terms.push_back({{m, 3, i}, 1.0});
        const OperatorMatrix rho0 = density_matrix(superposition(cut, terms));
        std::vector<double> t;
        for (int k = 0; k <= 100; ++k) t.push_back(0.5 * k);
        double worst = 0.0;
        for (const auto& bath : {BathState::zero_temperature(), BathState::with_beta(1.0)}) {
            EvolveOptions eo;
            eo.workers = opts.workers;
            const auto traj = evolve_reduced(rho0, ratio3, ohmic, bath, t, {}, eo);
            const auto cls = dfs_find_exact({3, 1}, 1.0, cut);
            for (const auto& c : cls) {
                if (c.members.size() < 2 || c.members.front().n != 3) continue;
                for (const auto& a : c.members)
                    for (const auto& b : c.members) {
                        const auto ia = Eigen::Index(flat_index(cut, a)), ib = Eigen::Index(flat_index(cut, b));
                        const double m0 = std::abs(rho0.entries(ia, ib));
                        for (const auto& snap : traj.snapshots)
                            worst = std::max(worst, std::abs(std::abs(snap.entries(ia, ib)) - m0));
                    }
            }
        }
        s.add("dynamics", "dfs_protection", worst, 1e-12, "w'_a/chi = 3, class n = 3, T = 0 and beta w_c = 1");
    });
    s.guarded("dynamics", "monotone_decoherence", [&] {
        const FockCutoff cut(1, 1);
        const std::pair<BasisLabel, cplx> terms[] = {{{0, 0, 0}, 1.0}, {{0, 0, 1}, 1.0}};
        const OperatorMatrix rho0 = density_matrix(superposition(cut, terms));
        const auto t = log_grid(1e-2, 50.0, 40);
        const ElementPair pair{{0, 0, 0}, {0, 0, 1}};
        const auto traj = evolve_reduced(rho0, ratio3, ohmic, BathState::zero_temperature(), t,
                                         std::span(&pair, 1));
        const auto& rec = traj.records.front();
        const auto i0 = Eigen::Index(flat_index(cut, pair.row)), i1 = Eigen::Index(flat_index(cut, pair.col));
        double worst = 0.0;
        for (std::size_t k = 1; k < t.size(); ++k) {
            worst = std::max(worst, rec.damping[k - 1] - rec.damping[k]);
            worst = std::max(worst, std::abs(traj.snapshots[k].entries(i0, i1)) -
                                        std::abs(traj.snapshots[k - 1].entries(i0, i1)));
        }
        s.add("dynamics", "monotone_decoherence", std::max(worst, 0.0), 1e-15, "T = 0 ohmic");
    });
    s.guarded("dynamics", "finite_bath_oracle", [&] {
        const FockCutoff cut(1, 1);
        EffectiveParams e;
        e.chi = 0.1;
        e.omega_a_prime = 0.3;
        const OperatorMatrix rho0 = density_matrix(superposition(cut, std::vector<std::pair<BasisLabel, cplx>>{
                                                                          {{0, 0, 0}, 1.0},
                                                                          {{1, 1, 0}, 1.0},
                                                                          {{1, 0, 1}, 1.0}}));
        std::vector<double> t;
        for (int k = 1; k <= 20; ++k) t.push_back(0.5 * k);
        auto spec = [](int n) { return FiniteBathSpec{{{1.0, 0.08, n, 0.0}, {1.7, 0.1, n, 0.0}}}; };
        const double dev = finite_bath_oracle(rho0, e, spec(15), t, {opts.workers, OraclePrecision::Double}).max_deviation;
        s.add("dynamics", "finite_bath_oracle", dev, 1e-6, "K = 2, vacuum, bath cutoff 15, double precision");

        double prev = INFINITY, rise = 0.0;
        std::ostringstream os;
        os.precision(3);
        for (int n : {8, 12, 15}) {
            const double d = finite_bath_oracle(rho0, e, spec(n), t, {opts.workers, OraclePrecision::Extended}).max_deviation;
            os << "cutoff " << n << ": " << d << "; ";
            if (!(d < prev)) rise = std::max(rise, d - prev);
            prev = d;
        }
        s.add("dynamics", "finite_bath_convergence", rise, 0.0,
              os.str() + "extended precision, residual = largest increase");
    });
    s.guarded("dynamics", "dispersive_fidelity_scaling", [&] {
        const double i1 = dispersive_infidelity(0.05), i2 = dispersive_infidelity(0.025);
        std::ostringstream os;
        os.precision(6);
        os << "min fidelity " << 1.0 - i1 << ", infidelity ratio " << i1 / i2;
        s.add("dynamics", "dispersive_fidelity_scaling",
              std::max(std::abs(i1 / i2 - 4.0) / 4.0 / 0.3, i1 / 0.01), 1.0,
              os.str() + " (residual = max(|ratio/4 - 1|/0.3, infidelity/0.01))");
    });

    return s.take();
}

} // namespace cqed
