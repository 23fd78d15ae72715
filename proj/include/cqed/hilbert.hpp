#pragma once

// Truncated Fock-space / qubit operator algebra on qubit (x) A (x) B.
//
// Flat index of |m, n, i> (m: photons in resonator A, n: photons in B,
// i: qubit level with sigma_z|0> = -|0>, sigma_z|1> = +|1>):
//
//     index = i*(n_max_a+1)*(n_max_b+1) + m*(n_max_b+1) + n
//
// Single-qubit 2x2 matrices are written in the ordered basis (|0>, |1>).

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace cqed {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

class FockCutoff {
public:
    FockCutoff(int n_max_a, int n_max_b);

    int n_max_a() const noexcept { return n_max_a_; }
    int n_max_b() const noexcept { return n_max_b_; }
    int dim_a() const noexcept { return n_max_a_ + 1; }
    int dim_b() const noexcept { return n_max_b_ + 1; }
    std::size_t dim() const noexcept { return 2u * std::size_t(dim_a()) * std::size_t(dim_b()); }

    friend bool operator==(const FockCutoff&, const FockCutoff&) = default;

private:
    int n_max_a_;
    int n_max_b_;
};

struct BasisLabel {
    int m = 0;
    int n = 0;
    int i = 0;

    friend bool operator==(const BasisLabel&, const BasisLabel&) = default;
    friend auto operator<=>(const BasisLabel&, const BasisLabel&) = default;
};

bool contains(const FockCutoff& cutoff, const BasisLabel& label) noexcept;
std::size_t flat_index(const FockCutoff& cutoff, const BasisLabel& label);
BasisLabel label_at(const FockCutoff& cutoff, std::size_t index);
/// All labels in flat-index order.
std::vector<BasisLabel> all_labels(const FockCutoff& cutoff);

/// Dense operator on the full truncated space, tagged with its labeling.
struct OperatorMatrix {
    FockCutoff basis;
    Matrix entries;

    OperatorMatrix(FockCutoff cutoff, Matrix m);

    std::size_t dim() const noexcept { return basis.dim(); }
    cplx operator()(const BasisLabel& row, const BasisLabel& col) const;
};

class StateVector {
public:
    /// Normalizes; throws InvalidArgument on a zero or non-finite vector.
    StateVector(FockCutoff cutoff, Vector amplitudes);

    const FockCutoff& basis() const noexcept { return basis_; }
    const Vector& amplitudes() const noexcept { return amplitudes_; }
    std::size_t dim() const noexcept { return basis_.dim(); }
    cplx amplitude(const BasisLabel& label) const;

private:
    FockCutoff basis_;
    Vector amplitudes_;
};

enum class Mode { A, B };

// --- single-factor operators ---------------------------------------------

Matrix annihilation(int n_max);
Matrix creation(int n_max);
Matrix number_operator(int n_max);
Matrix identity(int dim);

Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();
Matrix sigma_plus();   // |1><0|
Matrix sigma_minus();  // |0><1|

Matrix kron(const Matrix& a, const Matrix& b);

/// op_q (x) op_a (x) op_b in the fixed ordering.
OperatorMatrix tensor3(const Matrix& op_q, const Matrix& op_a, const Matrix& op_b,
                       const FockCutoff& cutoff);

// --- states ----------------------------------------------------------------

StateVector number_state(const FockCutoff& cutoff, const BasisLabel& label);

struct CoherentAmplitudes {
    Vector amplitudes;        // renormalized
    double norm_deficit;      // 1 - sum of |c_k|^2 before renormalization
    double tail_estimate;     // |alpha|^(2(n_max+1)) / (n_max+1)!
};

/// Truncated single-mode coherent state; warns when the tail exceeds 1e-8.
CoherentAmplitudes coherent_amplitudes(int n_max, cplx alpha);

/// Coherent state in one resonator; the other resonator is in vacuum and the
/// qubit in |0>.
StateVector coherent_state(const FockCutoff& cutoff, Mode mode, cplx alpha);

StateVector product_state(const FockCutoff& cutoff, const Vector& qubit, const Vector& mode_a,
                          const Vector& mode_b);

StateVector superposition(const FockCutoff& cutoff,
                          std::span<const std::pair<BasisLabel, cplx>> terms);

OperatorMatrix density_matrix(const StateVector& psi);

// --- checks ------------------------------------------------------------------

double max_abs(const Matrix& m);
/// ||H - H^dag||_max
double hermiticity_residual(const Matrix& m);
bool is_hermitian(const Matrix& m, double rel_tol = 1e-12);

struct DensityCheck {
    double trace_error;
    double hermiticity;
    double min_eigenvalue;
    bool valid;
};

DensityCheck check_density(const Matrix& rho, double tol = 1e-10);
/// Throws InvalidArgument naming the failed property.
void require_density(const Matrix& rho, const char* context);

// --- reductions --------------------------------------------------------------

enum Subsystem : std::uint8_t { kQubit = 1, kModeA = 2, kModeB = 4 };

/// Generic partial trace over an ordered list of factor dimensions; `keep`
/// flags which factors survive (order preserved).
Matrix partial_trace(const Matrix& rho, std::span<const int> dims, std::span<const bool> keep);

/// Partial trace on qubit (x) A (x) B; `keep` is a Subsystem bitmask.
Matrix partial_trace(const OperatorMatrix& rho, std::uint8_t keep);

double purity(const Matrix& rho);

/// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double fidelity(const Matrix& rho, const Matrix& sigma);

} // namespace cqed
