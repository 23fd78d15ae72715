#pragma once

// Closed-form spectrum of the diagonal dispersive Hamiltonian
//
//   E(m, n, 0) =  (w'_a - chi n) m
//   E(m, n, 1) = -(w'_a - chi n)(m + 1)          (hbar = 1)
//
// and decoherence-free subspaces found as degeneracy classes of that
// spectrum: pure dephasing damps a coherence by (E1 - E2)^2 Q2(t), so any set
// of exactly degenerate levels is protected.

#include "cqed/bath.hpp"
#include "cqed/device.hpp"
#include "cqed/hilbert.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cqed {

struct EnergyLevel {
    BasisLabel label;
    double energy;
};

double eigenvalue(const BasisLabel& label, const EffectiveParams& eff);
double energy_difference(const BasisLabel& a, const BasisLabel& b, const EffectiveParams& eff);

/// All levels in flat-index order.
std::vector<EnergyLevel> level_table(const EffectiveParams& eff, const FockCutoff& cutoff);

struct DegeneracyClass {
    double energy = 0.0;            // mean energy of the members
    std::vector<BasisLabel> members; // sorted by label
    double tolerance = 0.0;

    bool is_dfs() const noexcept { return members.size() >= 2; }
};

/// Single-linkage clustering of arbitrary levels (see dfs_find).
std::vector<DegeneracyClass> cluster_levels(std::vector<EnergyLevel> levels, double tol);

/// Single-linkage clustering of all levels on the energy line: consecutive
/// sorted energies closer than `tol` share a class. Default tolerance is
/// 1e-9 * max|E| (or 1e-9 when every energy is zero). Classes are ordered by
/// energy.
std::vector<DegeneracyClass> dfs_find(const EffectiveParams& eff, const FockCutoff& cutoff,
                                      std::optional<double> tol = std::nullopt);

struct Rational {
    long long num;
    long long den;
};

/// Exact-arithmetic variant for w'_a / chi = num/den (den > 0, chi != 0):
/// E * den / chi is an integer for every label, so classes are formed by
/// integer equality and cannot be split by rounding.
std::vector<DegeneracyClass> dfs_find_exact(Rational ratio, double chi, const FockCutoff& cutoff);

/// Classes with at least two members.
std::vector<DegeneracyClass> protected_classes(const std::vector<DegeneracyClass>& classes);

struct PairVerification {
    BasisLabel first;
    BasisLabel second;
    double delta_e;
    double delta_e2;           // E1^2 - E2^2
    std::vector<double> damping;
    std::vector<double> phase_shift;
};

struct DfsVerification {
    std::vector<double> t_grid;
    std::vector<PairVerification> pairs;  // every ordered pair of distinct members
    double max_damping = 0.0;
    double max_abs_phase_shift = 0.0;
    double max_q2 = 0.0;
    double damping_bound = 0.0;  // tolerance^2 * max Q2
    bool protected_ = true;      // max_damping <= damping_bound
};

DfsVerification dfs_verify(const DegeneracyClass& cls, const EffectiveParams& eff, const SpectralDensity& d,
                           const BathState& bath, std::span<const double> t_grid);

/// Human-readable account of which resonator index is fixed in the protected
/// classes versus the "TLRA in |m0>" reading; empty if no class qualifies.
std::string dfs_discrepancy_note(const std::vector<DegeneracyClass>& classes, const EffectiveParams& eff,
                                 const FockCutoff& cutoff);

} // namespace cqed
