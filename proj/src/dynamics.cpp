#include "cqed/dynamics.hpp"

#include "cqed/diagnostics.hpp"
#include "cqed/errors.hpp"
#include "cqed/kernels.hpp"
#include "cqed/spectrum.hpp"

#include "finite_bath_extended.hpp"
#include "parallel.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace cqed {
namespace {

using detail::parallel_for;

std::vector<double> label_energies(const EffectiveParams& eff, const FockCutoff& cutoff)
{
    std::vector<double> e(cutoff.dim());
    for (std::size_t k = 0; k < e.size(); ++k) e[k] = eigenvalue(label_at(cutoff, k), eff);
    return e;
}

} // namespace

void require_time_grid(std::span<const double> t_grid)
{
    for (std::size_t k = 0; k < t_grid.size(); ++k) {
        if (!std::isfinite(t_grid[k]) || t_grid[k] < 0.0)
            throw InvalidArgument("time grid: entries must be finite and non-negative");
        if (k > 0 && !(t_grid[k] > t_grid[k - 1])) throw InvalidArgument("time grid: must be strictly increasing");
    }
}

Matrix apply_dephasing(const Matrix& rho0, std::span<const double> energies, double t, const ReservoirIntegrals& q)
{
    const Eigen::Index d = rho0.rows();
    if (rho0.cols() != d || std::size_t(d) != energies.size())
        throw InvalidArgument("apply_dephasing: energy count does not match matrix dimension");

    // Free phase and phase shift separate into per-level factors:
    //   exp(-i[(E_k - E_l) t + (E_k^2 - E_l^2) Q1]) = f_k conj(f_l),  f_k = exp(-i(E_k t + E_k^2 Q1))
    std::vector<cplx> f(std::size_t(d), cplx{});
    for (Eigen::Index k = 0; k < d; ++k) {
        const double e = energies[std::size_t(k)];
        f[std::size_t(k)] = std::polar(1.0, -(e * t + e * e * q.q1));
    }

    const auto& kern = kernels::active();
    Matrix out(d, d);
    std::vector<double> damp(static_cast<std::size_t>(d));
    for (Eigen::Index l = 0; l < d; ++l) {  // column l is contiguous
        const double el = energies[std::size_t(l)];
        for (Eigen::Index k = 0; k < d; ++k) {
            const double de = energies[std::size_t(k)] - el;
            damp[std::size_t(k)] = de == 0.0 ? 1.0 : std::exp(-de * de * q.q2);
        }
        kern.dephase_row(&rho0(0, l), std::conj(f[std::size_t(l)]), f.data(), damp.data(), &out(0, l), std::size_t(d));
        // f_k conj(f_k) is 1 only to rounding; degenerate elements are kept exactly.
        for (Eigen::Index k = 0; k < d; ++k)
            if (energies[std::size_t(k)] == el) out(k, l) = rho0(k, l);
    }
    return out;
}

DephasingTrajectory evolve_reduced(const OperatorMatrix& rho0, const EffectiveParams& eff, const SpectralDensity& d,
                                   const BathState& bath, std::span<const double> t_grid,
                                   std::span<const ElementPair> tracked, const EvolveOptions& opts)
{
    require_density(rho0.entries, "evolve_reduced");
    require_time_grid(t_grid);
    const FockCutoff& cut = rho0.basis;
    const std::vector<double> energies = label_energies(eff, cut);

    std::vector<ElementPair> pairs(tracked.begin(), tracked.end());
    if (tracked.empty()) {
        for (Eigen::Index l = 0; l < rho0.entries.cols() && pairs.size() < kMaxDefaultRecords; ++l)
            for (Eigen::Index k = 0; k < l && pairs.size() < kMaxDefaultRecords; ++k)
                if (rho0.entries(k, l) != cplx{}) pairs.push_back({label_at(cut, std::size_t(k)), label_at(cut, std::size_t(l))});
        std::sort(pairs.begin(), pairs.end(), [&](const ElementPair& x, const ElementPair& y) {
            const auto kx = std::pair(flat_index(cut, x.row), flat_index(cut, x.col));
            const auto ky = std::pair(flat_index(cut, y.row), flat_index(cut, y.col));
            return kx < ky;
        });
    }

    DephasingTrajectory traj;
    traj.basis = cut;
    traj.initial = rho0.entries;
    traj.t_grid.assign(t_grid.begin(), t_grid.end());
    traj.integrals.resize(t_grid.size());

    std::vector<Matrix> snaps(t_grid.size());
    parallel_for(t_grid.size(), opts.workers, [&](std::size_t k) {
        const double t = t_grid[k];
        const ReservoirIntegrals q{q1(d, t, opts.quadrature).value, q2(d, bath, t, opts.quadrature).value};
        traj.integrals[k] = q;
        snaps[k] = apply_dephasing(rho0.entries, energies, t, q);
    });
    traj.snapshots.reserve(snaps.size());
    for (auto& s : snaps) traj.snapshots.emplace_back(cut, std::move(s));

    for (const auto& p : pairs) {
        const double er = energies[flat_index(cut, p.row)];
        const double ec = energies[flat_index(cut, p.col)];
        ElementRecord rec{p, er - ec, er * er - ec * ec, {}, {}};
        for (const auto& q : traj.integrals) {
            rec.phase_shift.push_back(phase_shift(er, ec, q.q1));
            rec.damping.push_back(damping(er, ec, q.q2));
        }
        traj.records.push_back(std::move(rec));
    }
    return traj;
}

ReservoirIntegrals discrete_reservoir_integrals(const FiniteBathSpec& spec, double t)
{
    ReservoirIntegrals q;
    for (const auto& m : spec.modes) {
        const double w = m.coupling * m.coupling / (m.omega * m.omega);
        const double s = std::sin(0.5 * m.omega * t);
        q.q1 += w * std::sin(m.omega * t);
        q.q2 += 2.0 * w * s * s * (2.0 * m.occupation + 1.0);
    }
    return q;
}

FiniteBathReport finite_bath_oracle(const OperatorMatrix& rho0, const EffectiveParams& eff,
                                    const FiniteBathSpec& spec, std::span<const double> t_grid,
                                    const OracleOptions& opts)
{
    const unsigned workers = opts.workers;
    require_density(rho0.entries, "finite_bath_oracle");
    require_time_grid(t_grid);
    if (spec.modes.empty() || spec.modes.size() > 4)
        throw InvalidArgument("finite_bath_oracle: need 1 to 4 bath modes");
    std::size_t bath_dim = 1;
    for (const auto& m : spec.modes) {
        if (!(m.omega > 0.0)) throw InvalidArgument("finite_bath_oracle: mode frequency must be positive");
        if (m.fock_cutoff < 1) throw InvalidArgument("finite_bath_oracle: mode Fock cutoff must be >= 1");
        if (!(m.occupation >= 0.0)) throw InvalidArgument("finite_bath_oracle: occupation must be >= 0");
        bath_dim *= std::size_t(m.fock_cutoff + 1);
    }
    const FockCutoff& cut = rho0.basis;
    FiniteBathReport rep;
    rep.t_grid.assign(t_grid.begin(), t_grid.end());

    // System Hamiltonian from the matrix construction; it must be diagonal,
    // which makes H_T block diagonal with one bath block per system level.
    const OperatorMatrix hs = build_diagonal(eff, cut).matrix;
    const Matrix off = hs.entries - Matrix(hs.entries.diagonal().asDiagonal());
    if (max_abs(off) != 0.0) throw InvalidArgument("finite_bath_oracle: system Hamiltonian is not diagonal");
    std::vector<double> sys_e(cut.dim());
    for (std::size_t k = 0; k < sys_e.size(); ++k) sys_e[k] = hs.entries(Eigen::Index(k), Eigen::Index(k)).real();

    for (double e : sys_e)
        for (const auto& m : spec.modes)
            rep.displacement_metric = std::max(rep.displacement_metric, std::abs(e * m.coupling / m.omega));
    if (rep.displacement_metric > 1.0) {
        std::ostringstream os;
        os << "finite_bath_oracle: displacement metric " << rep.displacement_metric
           << " > 1.0, bath truncation cannot be trusted";
        throw CapacityError(os.str());
    }
    if (rep.displacement_metric > 0.3) {
        std::ostringstream os;
        os << "finite_bath_oracle: displacement metric " << rep.displacement_metric << " > 0.3 (truncation risk)";
        rep.warnings.push_back(os.str());
        warn(os.str());
    }

    // Distinct system energies; each owns one bath block.
    std::map<double, std::size_t> level_of;
    std::vector<double> levels;
    for (double e : sys_e)
        if (level_of.emplace(e, levels.size()).second) levels.push_back(e);
    std::vector<std::size_t> level_index(sys_e.size());
    for (std::size_t k = 0; k < sys_e.size(); ++k) level_index[k] = level_of.at(sys_e[k]);

    if (opts.precision == OraclePrecision::Extended) {
        detail::finite_bath_extended(rho0.entries, sys_e, levels, level_index, spec, t_grid, workers, rep);
        return rep;
    }

    const std::size_t total = cut.dim() * bath_dim;
    if (total > kMaxOracleDim)
        throw CapacityError("finite_bath_oracle: composite dimension " + std::to_string(total) + " exceeds " +
                            std::to_string(kMaxOracleDim));

    // Bath operators on the tensor product of the modes (mode 0 most significant).
    const Eigen::Index bd = Eigen::Index(bath_dim);
    Matrix h_res = Matrix::Zero(bd, bd), x_sum = Matrix::Zero(bd, bd);
    double renorm = 0.0;
    Eigen::VectorXd p_bath = Eigen::VectorXd::Ones(bd);
    {
        std::size_t before = 1;
        for (std::size_t k = 0; k < spec.modes.size(); ++k) {
            const auto& m = spec.modes[k];
            const int dk = m.fock_cutoff + 1;
            const std::size_t after = bath_dim / (before * std::size_t(dk));
            const Matrix ib = identity(int(before)), ia = identity(int(after));
            const Matrix a = kron(ib, kron(annihilation(m.fock_cutoff), ia));
            h_res += m.omega * a.adjoint() * a;
            x_sum += m.coupling * (a + a.adjoint());
            renorm += m.coupling * m.coupling / m.omega;

            // truncated thermal distribution p(j) ~ (n/(1+n))^j
            Eigen::VectorXd pk(dk);
            const double ratio = m.occupation / (1.0 + m.occupation);
            for (int j = 0; j < dk; ++j) pk(j) = j == 0 ? 1.0 : std::pow(ratio, j);
            pk /= pk.sum();
            for (Eigen::Index idx = 0; idx < bd; ++idx) {
                const std::size_t digit = (std::size_t(idx) / after) % std::size_t(dk);
                p_bath(idx) *= pk(Eigen::Index(digit));
            }
            before *= std::size_t(dk);
        }
    }
    std::vector<Eigen::Index> occupied;
    for (Eigen::Index j = 0; j < bd; ++j)
        if (p_bath(j) > 0.0) occupied.push_back(j);

    struct Block {
        Matrix vecs;
        Eigen::VectorXd vals;
        Matrix weighted;  // V^dag * sqrt(p_J) e_J, one column per occupied J
    };
    std::vector<Block> blocks(levels.size());
    parallel_for(levels.size(), workers, [&](std::size_t b) {
        const double e = levels[b];
        Matrix h = h_res + e * x_sum;
        h.diagonal().array() += e + e * e * renorm;
        Eigen::SelfAdjointEigenSolver<Matrix> es(h);
        Block blk{es.eigenvectors(), es.eigenvalues(), Matrix(bd, Eigen::Index(occupied.size()))};
        for (std::size_t c = 0; c < occupied.size(); ++c)
            blk.weighted.col(Eigen::Index(c)) = std::sqrt(p_bath(occupied[c])) * blk.vecs.row(occupied[c]).adjoint();
        blocks[b] = std::move(blk);
    });

    rep.oracle.resize(t_grid.size());
    rep.analytic.resize(t_grid.size());
    rep.deviation.resize(t_grid.size());
    parallel_for(t_grid.size(), workers, [&](std::size_t k) {
        const double t = t_grid[k];
        std::vector<Matrix> phi(levels.size());
        for (std::size_t b = 0; b < levels.size(); ++b) {
            const auto& blk = blocks[b];
            Eigen::VectorXcd ph(blk.vals.size());
            for (Eigen::Index j = 0; j < ph.size(); ++j) ph(j) = std::polar(1.0, -blk.vals(j) * t);
            phi[b] = blk.vecs * (ph.asDiagonal() * blk.weighted);
        }
        // overlap(b1, b2) = Tr_B[U_b1 rho_B U_b2^dag] = sum_J p_J <phi_b2^J | phi_b1^J>
        const std::size_t nl = levels.size();
        Matrix overlap(static_cast<Eigen::Index>(nl), static_cast<Eigen::Index>(nl));
        for (std::size_t b1 = 0; b1 < nl; ++b1)
            for (std::size_t b2 = 0; b2 < nl; ++b2)
                overlap(Eigen::Index(b1), Eigen::Index(b2)) = kernels::active().dot(
                    phi[b2].data(), phi[b1].data(), std::size_t(phi[b1].size()));

        const Eigen::Index d = rho0.entries.rows();
        Matrix rho(d, d);
        for (Eigen::Index c = 0; c < d; ++c)
            for (Eigen::Index r = 0; r < d; ++r)
                rho(r, c) = rho0.entries(r, c) * overlap(Eigen::Index(level_index[std::size_t(r)]),
                                                         Eigen::Index(level_index[std::size_t(c)]));
        rep.oracle[k] = std::move(rho);
        rep.analytic[k] = apply_dephasing(rho0.entries, sys_e, t, discrete_reservoir_integrals(spec, t));
        rep.deviation[k] = max_abs(rep.oracle[k] - rep.analytic[k]);
    });
    for (double dv : rep.deviation) rep.max_deviation = std::max(rep.max_deviation, dv);
    return rep;
}

DispersiveCheck dispersive_check(const StateVector& psi0, const CircuitModel& model, std::span<const double> t_grid)
{
    require_time_grid(t_grid);
    const FockCutoff& cut = psi0.basis();
    const HamiltonianStage jc = build_jc(model, cut);
    const HamiltonianStage diag = build_diagonal(effective_params(model), cut);
    const OperatorMatrix h_disp = to_frame(diag, jc.frame, model);

    Eigen::SelfAdjointEigenSolver<Matrix> es(jc.matrix.entries);
    const Vector c0 = es.eigenvectors().adjoint() * psi0.amplitudes();
    const Eigen::VectorXd disp_e = h_disp.entries.diagonal().real();

    DispersiveCheck out;
    out.t_grid.assign(t_grid.begin(), t_grid.end());
    for (std::size_t k = 0; k < cut.dim(); ++k)
        out.mean_photons_a += std::norm(psi0.amplitudes()(Eigen::Index(k))) * label_at(cut, k).m;

    const Vector& p0 = psi0.amplitudes();
    for (double t : t_grid) {
        Vector cj(c0.size());
        for (Eigen::Index j = 0; j < cj.size(); ++j) cj(j) = std::polar(1.0, -es.eigenvalues()(j) * t) * c0(j);
        const Vector psi_jc = es.eigenvectors() * cj;
        Vector psi_d(p0.size());
        for (Eigen::Index j = 0; j < psi_d.size(); ++j) psi_d(j) = std::polar(1.0, -disp_e(j) * t) * p0(j);
        const double f = std::norm(kernels::active().dot(psi_jc.data(), psi_d.data(), std::size_t(psi_d.size())));
        out.fidelity.push_back(f);
        out.min_fidelity = std::min(out.min_fidelity, f);
    }
    return out;
}

Observable parse_observable(std::string_view name)
{
    if (name == "purity") return Observable::Purity;
    if (name == "qubit_coherence") return Observable::QubitCoherence;
    if (name == "subsystem_fidelity") return Observable::SubsystemFidelity;
    throw InvalidArgument("unknown observable '" + std::string(name) +
                          "' (expected purity, qubit_coherence, subsystem_fidelity)");
}

const char* to_string(Observable o) noexcept
{
    switch (o) {
    case Observable::Purity: return "purity";
    case Observable::QubitCoherence: return "qubit_coherence";
    case Observable::SubsystemFidelity: return "subsystem_fidelity";
    }
    return "?";
}

std::vector<double> observables(const DephasingTrajectory& traj, Observable which, std::uint8_t keep)
{
    std::vector<double> out;
    out.reserve(traj.snapshots.size());
    const int dims[3] = {2, traj.basis.dim_a(), traj.basis.dim_b()};
    auto reduce = [&](const Matrix& rho, std::uint8_t mask) {
        const bool flags[3] = {(mask & kQubit) != 0, (mask & kModeA) != 0, (mask & kModeB) != 0};
        return partial_trace(rho, dims, flags);
    };
    switch (which) {
    case Observable::Purity:
        for (const auto& s : traj.snapshots) out.push_back(purity(s.entries));
        break;
    case Observable::QubitCoherence:
        for (const auto& s : traj.snapshots) out.push_back(std::abs(reduce(s.entries, kQubit)(0, 1)));
        break;
    case Observable::SubsystemFidelity: {
        if ((keep & (kQubit | kModeA | kModeB)) == 0) throw InvalidArgument("observables: empty subsystem selection");
        const Matrix ref = reduce(traj.initial, keep);
        for (const auto& s : traj.snapshots) out.push_back(fidelity(ref, reduce(s.entries, keep)));
        break;
    }
    }
    return out;
}

} // namespace cqed
