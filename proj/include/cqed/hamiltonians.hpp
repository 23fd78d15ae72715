#pragma once

// The reduction chain of the circuit Hamiltonian, each stage as a dense
// matrix on the truncated qubit (x) A (x) B space. All matrices are H/hbar in
// rad/s.
//
//   Full        : w_a a'a + w_b b'b + 2E_C(2n_g-1) sz - g(a+a') sz
//                 - E_J cos[phi_e + phi_b(b+b')] sx                     (lab)
//   Rotated     : R Full R' at n_g = 1/2, phi_e = 0,
//                 R = exp(-i pi/4 sy): sz -> sx, sx -> -sz              (lab, qubit rotated)
//   Quadratic   : cosine expanded to second order in phi_b              (lab, qubit rotated)
//   JC          : w_a a'a + w_q(b'b) sz/2 - g(a s+ + s- a')             (rotating w.r.t. w_b b'b)
//   Dispersive  : w_a a'a + w_q(b'b) sz/2
//                 - (g^2/w_a)(1 + w_q(b'b)/w_a)[sz a'a + (sz+1)/2]      (rotating w.r.t. w_b b'b)
//   Diagonal    : H0|0><0| + H1|1><1| with w'_a, chi                   (interaction picture w.r.t.
//                                                                        w_a a'a + w_q(b'b) sz/2)

#include "cqed/device.hpp"
#include "cqed/hilbert.hpp"

#include <string>

namespace cqed {

enum class StageId { Full, Rotated, Quadratic, JaynesCummings, Dispersive, Diagonal };

enum class Frame {
    Lab,                    // Full
    LabQubitRotated,        // Rotated, Quadratic
    RotatingB,              // interaction picture w.r.t. w_b b'b
    DispersiveInteraction,  // additionally w.r.t. w_a a'a + w_q(b'b) sz/2
};

const char* to_string(StageId id) noexcept;
const char* to_string(Frame f) noexcept;

struct HamiltonianStage {
    StageId id;
    OperatorMatrix matrix;
    Frame frame;
    std::string frame_note;
    // Max-norm of terms discarded by this stage's approximation (0 if none).
    double dropped_term_norm = 0.0;
};

constexpr std::size_t kMaxHamiltonianDim = 5000;

HamiltonianStage build_full(const CircuitModel& model, const FockCutoff& cutoff);
HamiltonianStage build_rotated(const CircuitModel& model, const FockCutoff& cutoff);
HamiltonianStage build_quadratic(const CircuitModel& model, const FockCutoff& cutoff);
HamiltonianStage build_jc(const CircuitModel& model, const FockCutoff& cutoff);
HamiltonianStage build_dispersive(const CircuitModel& model, const FockCutoff& cutoff);
HamiltonianStage build_diagonal(const EffectiveParams& eff, const FockCutoff& cutoff);

/// The fixed qubit rotation R = exp(-i (pi/4) sigma_y).
Matrix qubit_rotation();

/// (R (x) 1 (x) 1) H (R (x) 1 (x) 1)^dag
OperatorMatrix rotate_qubit_frame(const OperatorMatrix& h);

/// Hermitian function of a Hermitian matrix via exact eigendecomposition.
template <class F>
Matrix hermitian_function(const Matrix& h, F&& f);

/// w_a a'a + w_q(b'b) sz/2, the part removed when moving from RotatingB to
/// DispersiveInteraction.
OperatorMatrix dispersive_free_part(const CircuitModel& model, const FockCutoff& cutoff);

/// Brings a stage into `target`. Supported: identity, and
/// DispersiveInteraction -> RotatingB (re-adds dispersive_free_part).
/// Anything else throws InvalidArgument naming both frames.
OperatorMatrix to_frame(const HamiltonianStage& stage, Frame target, const CircuitModel& model);

/// Quadratic-expansion residual ||H'' - H'||_max restricted to n_b < n_max_b
/// (the top B level carries an O(phi_b^2) truncation artifact).
double quadratic_expansion_residual(const CircuitModel& model, const FockCutoff& cutoff);

} // namespace cqed

#include <Eigen/Eigenvalues>

namespace cqed {

template <class F>
Matrix hermitian_function(const Matrix& h, F&& f)
{
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    Eigen::VectorXcd fv(es.eigenvalues().size());
    for (Eigen::Index k = 0; k < fv.size(); ++k) fv(k) = f(es.eigenvalues()(k));
    return es.eigenvectors() * fv.asDiagonal() * es.eigenvectors().adjoint();
}

} // namespace cqed
