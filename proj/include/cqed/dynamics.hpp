#pragma once

// Exact reduced dynamics under pure dephasing, plus two brute-force oracles:
//
//  * evolve_reduced: rho_{kl}(t) = rho_{kl}(0) exp(-i (E_k - E_l) t)
//                                  exp(-i (E_k^2 - E_l^2) Q1(t)) exp(-(E_k - E_l)^2 Q2(t))
//  * finite_bath_oracle: the total system + K-mode bath Hamiltonian
//        H_T = H_S + sum w_k b_k'b_k + H_S sum c_k (b_k + b_k') + H_S^2 sum c_k^2 / w_k
//    propagated exactly on a truncated bath and traced out
//  * dispersive_check: Jaynes-Cummings vs dispersive state propagation
//
// hbar = 1 throughout; energies are angular frequencies.

#include "cqed/bath.hpp"
#include "cqed/device.hpp"
#include "cqed/hamiltonians.hpp"
#include "cqed/hilbert.hpp"

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cqed {

struct ElementPair {
    BasisLabel row;
    BasisLabel col;
};

struct ElementRecord {
    ElementPair pair;
    double delta_e;     // E_row - E_col
    double delta_e2;    // E_row^2 - E_col^2
    std::vector<double> phase_shift;
    std::vector<double> damping;
};

struct DephasingTrajectory {
    FockCutoff basis{1, 1};
    Matrix initial;  // rho(0)
    std::vector<double> t_grid;
    std::vector<OperatorMatrix> snapshots;
    std::vector<ElementRecord> records;
    std::vector<ReservoirIntegrals> integrals;  // per time point
};

constexpr std::size_t kMaxDefaultRecords = 256;

struct EvolveOptions {
    unsigned workers = 1;
    quadrature::Options quadrature{};
};

/// Throws InvalidArgument unless the grid is non-negative and strictly increasing.
void require_time_grid(std::span<const double> t_grid);

/// Applies the exact dephasing multiplier for one time point.
Matrix apply_dephasing(const Matrix& rho0, std::span<const double> energies, double t, const ReservoirIntegrals& q);

/// `tracked` defaults to the nonzero strictly-upper-triangular elements of
/// rho0 in flat order, at most kMaxDefaultRecords of them.
DephasingTrajectory evolve_reduced(const OperatorMatrix& rho0, const EffectiveParams& eff, const SpectralDensity& d,
                                   const BathState& bath, std::span<const double> t_grid,
                                   std::span<const ElementPair> tracked = {}, const EvolveOptions& opts = {});

// --- finite-bath oracle --------------------------------------------------------

struct BathMode {
    double omega = 1.0;       // mode frequency
    double coupling = 0.0;    // c_k (dimensionless)
    int fock_cutoff = 10;     // highest kept occupation
    double occupation = 0.0;  // thermal mean occupation (0 = vacuum)
};

struct FiniteBathSpec {
    std::vector<BathMode> modes;  // 1 to 4 modes
};

constexpr std::size_t kMaxOracleDim = 20000;

struct FiniteBathReport {
    std::vector<double> t_grid;
    std::vector<Matrix> oracle;     // brute-force reduced states
    std::vector<Matrix> analytic;   // closed form with discrete-mode Q1, Q2
    std::vector<double> deviation;  // max entrywise |oracle - analytic| per t
    double max_deviation = 0.0;
    double displacement_metric = 0.0;  // max |E c_k / w_k|
    std::vector<std::string> warnings;
};

/// Q1 = sum c^2/w^2 sin(w t),  Q2 = 2 sum c^2/w^2 sin^2(w t/2) coth(beta w/2),
/// with coth(beta w/2) = 2 n_k + 1 for the mode's thermal occupation.
ReservoirIntegrals discrete_reservoir_integrals(const FiniteBathSpec& spec, double t);

enum class OraclePrecision {
    Double,    // dense propagation on the full truncated bath product space
    Extended,  // 50-digit arithmetic, one factor per bath mode
};

struct OracleOptions {
    unsigned workers = 1;
    OraclePrecision precision = OraclePrecision::Double;
};

/// Exact propagation of H_T on the truncated bath, traced back to the system
/// and compared with the closed form. Extended precision pushes the rounding
/// floor far below the bath truncation error, so the deviation measures
/// truncation alone; its report matrices are rounded to double.
FiniteBathReport finite_bath_oracle(const OperatorMatrix& rho0, const EffectiveParams& eff,
                                    const FiniteBathSpec& spec, std::span<const double> t_grid,
                                    const OracleOptions& opts = {});

// --- dispersive validity -------------------------------------------------------

struct DispersiveCheck {
    std::vector<double> t_grid;
    std::vector<double> fidelity;  // |<psi_JC(t)|psi_disp(t)>|^2
    double min_fidelity = 1.0;
    double mean_photons_a = 0.0;   // <a'a> of the initial state
};

DispersiveCheck dispersive_check(const StateVector& psi0, const CircuitModel& model, std::span<const double> t_grid);

// --- observables ---------------------------------------------------------------

enum class Observable { Purity, QubitCoherence, SubsystemFidelity };

/// "purity", "qubit_coherence", "subsystem_fidelity"; unknown names throw.
Observable parse_observable(std::string_view name);
const char* to_string(Observable o) noexcept;

/// QubitCoherence: |rho_q(0,1)| after tracing out A and B.
/// SubsystemFidelity: Uhlmann fidelity of the reduced state on `keep`
/// (Subsystem bitmask) to its t = 0 value.
std::vector<double> observables(const DephasingTrajectory& traj, Observable which, std::uint8_t keep = kQubit);

} // namespace cqed
