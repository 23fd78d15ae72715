// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "cqed/bath.hpp"
#include "cqed/device.hpp"
#include "cqed/dynamics.hpp"
#include "cqed/hamiltonians.hpp"
#include "cqed/hilbert.hpp"
#include "cqed/spectrum.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace cqed;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, auto... v)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, v...);
    return buf;
}

double rel(double a, double b)
{
    const double s = std::max(std::abs(a), std::abs(b));
    return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

std::vector<double> log_grid(double lo, double hi, int n)
{
    std::vector<double> t;
    for (int k = 0; k < n; ++k) t.push_back(lo * std::pow(hi / lo, double(k) / double(n - 1)));
    return t;
}

CircuitModel random_model(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    CircuitModel m;
    m.omega_a = 1.0;
    m.omega_b = 0.5 + u(rng);
    m.charging = 0.5 + u(rng);
    m.josephson = 0.02 + 0.08 * u(rng);
    m.g_a = 0.002 + 0.02 * u(rng);
    m.phi_b = 0.01 + 0.18 * u(rng);
    return m;
}

// 1
Outcome cross_phase_check()
{
    const CrossPhase c = cross_phase(3.6e8, 160e-9);
    return {std::abs(c.cycles - 9.17) <= 0.01, fmt("chi tau = %.17g cycles (target 9.17 +/- 0.01)", c.cycles)};
}

// 2
Outcome eigen_spectrum()
{
    const FockCutoff cut(8, 8);
    std::vector<EffectiveParams> sets;
    EffectiveParams e;
    e.omega_a_prime = 3038415859.0431256;  // device map, phi_b = 0.1
    e.chi = 9066665.2381274739;
    sets.push_back(e);
    e.omega_a_prime = 3.0;
    e.chi = 1.0;
    sets.push_back(e);
    std::mt19937_64 rng(2);
    for (int k = 0; k < 5; ++k) sets.push_back(effective_params(random_model(rng)));

    double worst = 0.0;
    for (const auto& p : sets) {
        const Matrix h = build_diagonal(p, cut).matrix.entries;
        Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
        std::vector<double> dense(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
        std::vector<double> closed;
        for (const auto& l : all_labels(cut)) closed.push_back(eigenvalue(l, p));
        std::sort(closed.begin(), closed.end());
        const double scale = std::max(std::abs(closed.front()), std::abs(closed.back()));
        for (std::size_t k = 0; k < closed.size(); ++k)
            worst = std::max(worst, std::abs(closed[k] - dense[k]) / scale);
    }
    return {worst <= 1e-12, fmt("max |E_closed - E_dense| / max|E| = %.3g over %zu parameter sets, %zu labels (tol 1e-12)",
                                worst, sets.size(), cut.dim())};
}

// 3
Outcome chain_consistency()
{
    const FockCutoff cut(6, 6);
    std::mt19937_64 rng(3);
    double worst = 0.0;
    for (int draw = 0; draw < 20; ++draw) {
        const CircuitModel m = random_model(rng);
        const Matrix lhs = build_dispersive(m, cut).matrix.entries - dispersive_free_part(m, cut).entries;
        const Matrix rhs = build_diagonal(effective_params(m), cut).matrix.entries;
        worst = std::max(worst, max_abs(lhs - rhs));
    }
    return {worst <= 1e-12, fmt("max entrywise |H_disp - H_free - H_diag| = %.3g, 20 draws, w_a = 1 (tol 1e-12)", worst)};
}

// 4
Outcome dfs_protection()
{
    const FockCutoff cut(4, 4);
    EffectiveParams e;
    e.chi = 1.0;
    e.omega_a_prime = 3.0;
    const auto classes = dfs_find_exact({3, 1}, e.chi, cut);
    const DegeneracyClass* cls = nullptr;
    for (const auto& c : classes)
        if (std::count_if(c.members.begin(), c.members.end(), [](const BasisLabel& l) { return l.n == 3; }) ==
            2 * cut.dim_a())
            cls = &c;
    if (!cls) return {false, "no degenerate class holds every n = 3 label"};

    std::vector<std::pair<BasisLabel, cplx>> terms;
    for (const auto& l : all_labels(cut))
        if (l.n == 3) terms.push_back({l, 1.0});
    terms.push_back({{1, 2, 0}, 1.0});
    const OperatorMatrix rho0 = density_matrix(superposition(cut, terms));

    const double alpha = 0.1, wc = 1.0;
    const SpectralDensity d = SpectralDensity::ohmic(alpha, 1.0, wc);
    std::vector<double> t;
    for (int k = 0; k <= 200; ++k) t.push_back(50.0 / wc * k / 200.0);

    double drift = 0.0;
    for (const auto& bath : {BathState::zero_temperature(), BathState::with_beta(1.0 / wc)}) {
        const auto traj = evolve_reduced(rho0, e, d, bath, t);
        for (const auto& a : cls->members)
            for (const auto& b : cls->members) {
                if (a.n != 3 || b.n != 3) continue;
                const double m0 = std::abs(rho0(a, b));
                for (const auto& s : traj.snapshots) drift = std::max(drift, std::abs(std::abs(s(a, b)) - m0));
            }
    }

    const ElementPair control{{0, 3, 0}, {1, 2, 0}};
    const double de = energy_difference(control.row, control.col, e);
    const auto traj = evolve_reduced(rho0, e, d, BathState::zero_temperature(), t, std::span(&control, 1));
    const double m0 = std::abs(rho0(control.row, control.col));
    double ctrl = 0.0;
    for (std::size_t k = 0; k < t.size(); ++k) {
        const double q2 = alpha / 2.0 * std::log1p(wc * wc * t[k] * t[k]);
        ctrl = std::max(ctrl, rel(std::abs(traj.snapshots[k](control.row, control.col)) / m0, std::exp(-de * de * q2)));
    }
    return {drift <= 1e-12 && ctrl <= 1e-6 && std::abs(std::abs(de) - e.chi) == 0.0,
            fmt("E = 0 class (%zu labels, all 10 with n = 3): max | |rho_kl(t)| - |rho_kl(0)| | = %.3g (tol 1e-12), T = 0 and beta w_c = 1; "
                "control |dE| = chi: max rel. error vs exp(-chi^2 Q2) = %.3g (tol 1e-6)",
                cls->members.size(), drift, ctrl)};
}

// 5
Outcome reservoir_integrals_check()
{
    const double alpha = 0.1, wc = 1.0;
    const SpectralDensity d = SpectralDensity::ohmic(alpha, 1.0, wc);
    double w1 = 0.0, w2 = 0.0;
    for (double t : log_grid(1e-3 / wc, 50.0 / wc, 50)) {
        w1 = std::max(w1, rel(q1(d, t).value, alpha * std::atan(wc * t)));
        w2 = std::max(w2, rel(q2(d, BathState::zero_temperature(), t).value, alpha / 2.0 * std::log1p(wc * wc * t * t)));
    }
    return {w1 <= 1e-6 && w2 <= 1e-6,
            fmt("50 log-spaced t in [1e-3, 50]/w_c: max rel. error Q1 %.3g, Q2 %.3g (tol 1e-6)", w1, w2)};
}

// 6
Outcome finite_bath()
{
    const FockCutoff cut(1, 1);
    EffectiveParams e;
    e.chi = 0.1;
    e.omega_a_prime = 0.3;
    const std::pair<BasisLabel, cplx> terms[] = {{{0, 0, 0}, 1.0}, {{1, 1, 0}, 1.0}, {{1, 0, 1}, 1.0}};
    const OperatorMatrix rho0 = density_matrix(superposition(cut, terms));
    std::vector<double> t;
    for (int k = 1; k <= 20; ++k) t.push_back(0.5 * k);
    auto spec = [](int n) { return FiniteBathSpec{{{1.0, 0.08, n, 0.0}, {1.7, 0.1, n, 0.0}}}; };

    const auto dbl = finite_bath_oracle(rho0, e, spec(15), t, {4, OraclePrecision::Double});
    double ext[3];
    const int cutoffs[3] = {8, 12, 15};
    for (int k = 0; k < 3; ++k)
        ext[k] = finite_bath_oracle(rho0, e, spec(cutoffs[k]), t, {4, OraclePrecision::Extended}).max_deviation;
    const bool monotone = ext[1] < ext[0] && ext[2] < ext[1];
    return {dbl.displacement_metric <= 0.1 && dbl.max_deviation < 1e-6 && ext[2] < 1e-6 && monotone,
            fmt("K = 2, vacuum, metric %.3g; cutoff 15 deviation %.3g (double), %.3g (50-digit); "
                "50-digit deviation at cutoffs 8/12/15: %.3g / %.3g / %.3g",
                dbl.displacement_metric, dbl.max_deviation, ext[2], ext[0], ext[1], ext[2])};
}

// 7
double min_fidelity(double g_over_delta, const std::vector<std::pair<BasisLabel, cplx>>& terms)
{
    CircuitModel m;
    m.omega_a = 1.0;
    m.josephson = 0.05;
    const double delta = std::abs(qubit_frequency(0.0, m.josephson, 0) - m.omega_a);
    m.g_a = g_over_delta * delta;
    const FockCutoff cut(4, 1);
    std::vector<double> t;
    const double stop = 3.0 * 2.0 * std::numbers::pi / delta;
    for (int k = 1; k <= 600; ++k) t.push_back(stop * k / 600.0);
    return dispersive_check(superposition(cut, terms), m, t).min_fidelity;
}

Outcome dispersive_validity()
{
    std::string detail;
    bool pass = true;
    const std::vector<std::pair<BasisLabel, cplx>> states[] = {{{{0, 0, 1}, 1.0}},
                                                               {{{0, 0, 0}, 1.0}, {{0, 0, 1}, 1.0}}};
    const char* names[] = {"|0,0,1>", "(|0,0,0> + |0,0,1>)/sqrt2"};
    for (int k = 0; k < 2; ++k) {
        const double f1 = min_fidelity(0.05, states[k]), f2 = min_fidelity(0.025, states[k]);
        const double ratio = (1.0 - f1) / (1.0 - f2);
        pass = pass && f1 >= 0.99 && std::abs(ratio - 4.0) <= 0.3 * 4.0;
        detail += fmt("%s%s: min fidelity %.6f, infidelity ratio %.4f", k ? "; " : "", names[k], f1, ratio);
    }
    return {pass, detail + " (need >= 0.99 and 4 +/- 30%)"};
}

// 8
Outcome quadratic_scaling()
{
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
    return {std::abs(r1 / r2 - 16.0) <= 0.2 * 16.0,
            fmt("||H'' - H'|| ratio phi_b 0.1 / 0.05 = %.4f at B cutoff 10 (target 16 +/- 20%%)", r1 / r2)};
}

// 9
std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome determinism()
{
    namespace fs = std::filesystem;
    const fs::path cfg = fs::path(CQED_SOURCE_DIR) / "configs" / "dephasing_ohmic.cfg";
    const fs::path root = fs::temp_directory_path() / "cqed_acceptance_determinism";
    fs::remove_all(root);
    const char* workers[] = {"1", "1", "4"};
    for (int k = 0; k < 3; ++k) {
        const std::string cmd = std::string("\"") + CQED_CLI + "\" dephasing --config \"" + cfg.string() +
                                "\" --out \"" + (root / std::to_string(k)).string() + "\" --workers " + workers[k] +
                                " > /dev/null";
        if (const int rc = std::system(cmd.c_str()); rc != 0) return {false, fmt("CLI run %d exited with %d", k, rc)};
    }
    std::size_t files = 0;
    for (const auto& entry : fs::directory_iterator(root / "0")) {
        if (entry.path().extension() != ".csv") continue;
        ++files;
        const std::string ref = slurp(entry.path());
        for (int k = 1; k < 3; ++k)
            if (slurp(root / std::to_string(k) / entry.path().filename()) != ref)
                return {false, fmt("%s differs between runs", entry.path().filename().string().c_str())};
    }
    fs::remove_all(root);
    return {files == 3, fmt("%zu CSV files byte-identical across 3 runs (workers 1, 1, 4)", files)};
}

} // namespace

int main()
{
    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"cross_phase", cross_phase_check},
        {"eigen_spectrum", eigen_spectrum},
        {"chain_consistency", chain_consistency},
        {"dfs_protection", dfs_protection},
        {"reservoir_integrals", reservoir_integrals_check},
        {"finite_bath", finite_bath},
        {"dispersive_validity", dispersive_validity},
        {"quadratic_scaling", quadratic_scaling},
        {"determinism", determinism},
    };
    int failed = 0;
    int n = 0;
    for (const auto& [name, fn] : criteria) {
        ++n;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s %d %-20s %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", n, name, o.detail.c_str(), sec);
        std::fflush(stdout);
        if (!o.pass) ++failed;
    }
    std::printf("%d/%d criteria passed\n", n - failed, n);
    return failed == 0 ? 0 : 1;
}
