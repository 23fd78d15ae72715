#include "cqed/hilbert.hpp"

#include "cqed/diagnostics.hpp"
#include "cqed/errors.hpp"
#include "cqed/kernels.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>
#include <string>

namespace cqed {

FockCutoff::FockCutoff(int n_max_a, int n_max_b) : n_max_a_(n_max_a), n_max_b_(n_max_b)
{
    if (n_max_a < 1 || n_max_b < 1)
        throw InvalidArgument("FockCutoff: n_max_a and n_max_b must be >= 1 (got " +
                              std::to_string(n_max_a) + ", " + std::to_string(n_max_b) + ")");
}

bool contains(const FockCutoff& cutoff, const BasisLabel& label) noexcept
{
    return label.m >= 0 && label.m <= cutoff.n_max_a() && label.n >= 0 &&
           label.n <= cutoff.n_max_b() && (label.i == 0 || label.i == 1);
}

std::size_t flat_index(const FockCutoff& cutoff, const BasisLabel& label)
{
    if (!contains(cutoff, label)) {
        std::ostringstream os;
        os << "label (m=" << label.m << ", n=" << label.n << ", i=" << label.i
           << ") outside cutoff (" << cutoff.n_max_a() << ", " << cutoff.n_max_b() << ")";
        throw InvalidArgument(os.str());
    }
    const std::size_t da = cutoff.dim_a(), db = cutoff.dim_b();
    return std::size_t(label.i) * da * db + std::size_t(label.m) * db + std::size_t(label.n);
}

BasisLabel label_at(const FockCutoff& cutoff, std::size_t index)
{
    if (index >= cutoff.dim()) throw InvalidArgument("label_at: flat index out of range");
    const std::size_t da = cutoff.dim_a(), db = cutoff.dim_b();
    return {int((index / db) % da), int(index % db), int(index / (da * db))};
}

std::vector<BasisLabel> all_labels(const FockCutoff& cutoff)
{
    std::vector<BasisLabel> labels;
    labels.reserve(cutoff.dim());
    for (std::size_t k = 0; k < cutoff.dim(); ++k) labels.push_back(label_at(cutoff, k));
    return labels;
}

OperatorMatrix::OperatorMatrix(FockCutoff cutoff, Matrix m) : basis(cutoff), entries(std::move(m))
{
    if (entries.rows() != entries.cols() || std::size_t(entries.rows()) != basis.dim())
        throw InvalidArgument("OperatorMatrix: matrix is " + std::to_string(entries.rows()) + "x" +
                              std::to_string(entries.cols()) + ", basis dimension is " +
                              std::to_string(basis.dim()));
}

cplx OperatorMatrix::operator()(const BasisLabel& row, const BasisLabel& col) const
{
    return entries(Eigen::Index(flat_index(basis, row)), Eigen::Index(flat_index(basis, col)));
}

StateVector::StateVector(FockCutoff cutoff, Vector amplitudes)
    : basis_(cutoff), amplitudes_(std::move(amplitudes))
{
    if (std::size_t(amplitudes_.size()) != basis_.dim())
        throw InvalidArgument("StateVector: amplitude count does not match basis dimension");
    const double norm = amplitudes_.norm();
    if (!std::isfinite(norm) || norm == 0.0)
        throw InvalidArgument("StateVector: amplitudes are not normalizable");
    amplitudes_ /= norm;
}

cplx StateVector::amplitude(const BasisLabel& label) const
{
    return amplitudes_(Eigen::Index(flat_index(basis_, label)));
}

Matrix annihilation(int n_max)
{
    if (n_max < 1) throw InvalidArgument("annihilation: cutoff must be >= 1");
    Matrix a = Matrix::Zero(n_max + 1, n_max + 1);
    for (int k = 1; k <= n_max; ++k) a(k - 1, k) = std::sqrt(double(k));
    return a;
}

Matrix creation(int n_max) { return annihilation(n_max).adjoint(); }

Matrix number_operator(int n_max)
{
    if (n_max < 1) throw InvalidArgument("number_operator: cutoff must be >= 1");
    Matrix n = Matrix::Zero(n_max + 1, n_max + 1);
    for (int k = 0; k <= n_max; ++k) n(k, k) = double(k);
    return n;
}

Matrix identity(int dim) { return Matrix::Identity(dim, dim); }

Matrix pauli_x()
{
    Matrix s(2, 2);
    s << 0.0, 1.0, 1.0, 0.0;
    return s;
}

Matrix pauli_y()
{
    // sigma_y = i|0><1| - i|1><0|, so that [sigma_x, sigma_y] = 2i sigma_z with
    // sigma_z = |1><1| - |0><0|.
    Matrix s(2, 2);
    s << 0.0, cplx(0.0, 1.0), cplx(0.0, -1.0), 0.0;
    return s;
}

Matrix pauli_z()
{
    Matrix s(2, 2);
    s << -1.0, 0.0, 0.0, 1.0;
    return s;
}

Matrix sigma_plus()
{
    Matrix s = Matrix::Zero(2, 2);
    s(1, 0) = 1.0;
    return s;
}

Matrix sigma_minus() { return sigma_plus().transpose(); }

Matrix kron(const Matrix& a, const Matrix& b)
{
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < a.rows(); ++r)
        for (Eigen::Index c = 0; c < a.cols(); ++c)
            out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    return out;
}

OperatorMatrix tensor3(const Matrix& op_q, const Matrix& op_a, const Matrix& op_b,
                       const FockCutoff& cutoff)
{
    auto square = [](const Matrix& m, Eigen::Index d) { return m.rows() == d && m.cols() == d; };
    if (!square(op_q, 2) || !square(op_a, cutoff.dim_a()) || !square(op_b, cutoff.dim_b()))
        throw InvalidArgument("tensor3: factor dimensions do not match qubit (2) x A (" +
                              std::to_string(cutoff.dim_a()) + ") x B (" +
                              std::to_string(cutoff.dim_b()) + ")");
    return OperatorMatrix(cutoff, kron(op_q, kron(op_a, op_b)));
}

StateVector number_state(const FockCutoff& cutoff, const BasisLabel& label)
{
    Vector v = Vector::Zero(Eigen::Index(cutoff.dim()));
    v(Eigen::Index(flat_index(cutoff, label))) = 1.0;
    return StateVector(cutoff, std::move(v));
}

CoherentAmplitudes coherent_amplitudes(int n_max, cplx alpha)
{
    if (n_max < 1) throw InvalidArgument("coherent_amplitudes: cutoff must be >= 1");
    const double r2 = std::norm(alpha);
    Vector c(n_max + 1);
    c(0) = std::exp(-r2 / 2.0);
    for (int k = 1; k <= n_max; ++k) c(k) = c(k - 1) * alpha / std::sqrt(double(k));

    const double kept = c.squaredNorm();
    // |alpha|^(2(N+1)) / (N+1)!  in log space to stay finite for large alpha
    const double log_tail = double(n_max + 1) * std::log(std::max(r2, 1e-300)) - std::lgamma(n_max + 2.0);
    const double tail = r2 == 0.0 ? 0.0 : std::exp(log_tail);
    if (tail >= 1e-8) {
        std::ostringstream os;
        os << "coherent state |alpha|=" << std::abs(alpha) << " truncated at n_max=" << n_max
           << ": tail estimate " << tail << " >= 1e-8; renormalized";
        warn(os.str());
    }
    return {c / std::sqrt(kept), 1.0 - kept, tail};
}

StateVector coherent_state(const FockCutoff& cutoff, Mode mode, cplx alpha)
{
    Vector q = Vector::Zero(2);
    q(0) = 1.0;
    Vector vac_a = Vector::Zero(cutoff.dim_a());
    vac_a(0) = 1.0;
    Vector vac_b = Vector::Zero(cutoff.dim_b());
    vac_b(0) = 1.0;
    if (mode == Mode::A)
        return product_state(cutoff, q, coherent_amplitudes(cutoff.n_max_a(), alpha).amplitudes, vac_b);
    return product_state(cutoff, q, vac_a, coherent_amplitudes(cutoff.n_max_b(), alpha).amplitudes);
}

StateVector product_state(const FockCutoff& cutoff, const Vector& qubit, const Vector& mode_a,
                          const Vector& mode_b)
{
    if (qubit.size() != 2 || mode_a.size() != cutoff.dim_a() || mode_b.size() != cutoff.dim_b())
        throw InvalidArgument("product_state: factor dimensions do not match the cutoff");
    Vector v(Eigen::Index(cutoff.dim()));
    const Eigen::Index da = mode_a.size(), db = mode_b.size();
    for (Eigen::Index i = 0; i < 2; ++i)
        for (Eigen::Index m = 0; m < da; ++m)
            for (Eigen::Index n = 0; n < db; ++n) v(i * da * db + m * db + n) = qubit(i) * mode_a(m) * mode_b(n);
    return StateVector(cutoff, std::move(v));
}

StateVector superposition(const FockCutoff& cutoff,
                          std::span<const std::pair<BasisLabel, cplx>> terms)
{
    Vector v = Vector::Zero(Eigen::Index(cutoff.dim()));
    for (const auto& [label, amp] : terms) v(Eigen::Index(flat_index(cutoff, label))) += amp;
    return StateVector(cutoff, std::move(v));
}

OperatorMatrix density_matrix(const StateVector& psi)
{
    return OperatorMatrix(psi.basis(), psi.amplitudes() * psi.amplitudes().adjoint());
}

double max_abs(const Matrix& m)
{
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hermiticity_residual(const Matrix& m)
{
    return max_abs(m - m.adjoint());
}

bool is_hermitian(const Matrix& m, double rel_tol)
{
    const double scale = max_abs(m);
    return hermiticity_residual(m) <= rel_tol * (scale > 0.0 ? scale : 1.0);
}

DensityCheck check_density(const Matrix& rho, double tol)
{
    DensityCheck c{};
    if (rho.rows() != rho.cols() || rho.rows() == 0) return {1.0, 1.0, -1.0, false};
    c.trace_error = std::abs(rho.trace() - cplx(1.0, 0.0));
    c.hermiticity = hermiticity_residual(rho);
    const Matrix herm = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(herm, Eigen::EigenvaluesOnly);
    c.min_eigenvalue = es.eigenvalues().minCoeff();
    c.valid = c.trace_error <= tol && c.hermiticity <= tol && c.min_eigenvalue >= -tol;
    return c;
}

void require_density(const Matrix& rho, const char* context)
{
    const DensityCheck c = check_density(rho);
    if (c.valid) return;
    std::ostringstream os;
    os << context << ": not a valid density matrix (|tr-1|=" << c.trace_error
       << ", hermiticity residual=" << c.hermiticity << ", min eigenvalue=" << c.min_eigenvalue << ")";
    throw InvalidArgument(os.str());
}

Matrix partial_trace(const Matrix& rho, std::span<const int> dims, std::span<const bool> keep)
{
    if (dims.size() != keep.size()) throw InvalidArgument("partial_trace: dims/keep length mismatch");
    Eigen::Index total = 1, kept = 1;
    for (std::size_t f = 0; f < dims.size(); ++f) {
        if (dims[f] < 1) throw InvalidArgument("partial_trace: factor dimension must be positive");
        total *= dims[f];
        if (keep[f]) kept *= dims[f];
    }
    if (rho.rows() != total || rho.cols() != total)
        throw InvalidArgument("partial_trace: matrix dimension does not match factor dimensions");
    const Eigen::Index traced = total / kept;

    // full_index(k, t): flat index of the element with kept digits k and traced digits t.
    std::vector<Eigen::Index> full(static_cast<std::size_t>(total));
    for (Eigen::Index idx = 0; idx < total; ++idx) {
        Eigen::Index rem = idx, k = 0, t = 0, kstride = 1, tstride = 1;
        for (std::size_t f = dims.size(); f-- > 0;) {
            const Eigen::Index digit = rem % dims[f];
            rem /= dims[f];
            if (keep[f]) {
                k += digit * kstride;
                kstride *= dims[f];
            } else {
                t += digit * tstride;
                tstride *= dims[f];
            }
        }
        full[std::size_t(k * traced + t)] = idx;
    }

    Matrix out = Matrix::Zero(kept, kept);
    for (Eigen::Index a = 0; a < kept; ++a)
        for (Eigen::Index b = 0; b < kept; ++b) {
            cplx s = 0.0;
            for (Eigen::Index t = 0; t < traced; ++t)
                s += rho(full[std::size_t(a * traced + t)], full[std::size_t(b * traced + t)]);
            out(a, b) = s;
        }
    return out;
}

Matrix partial_trace(const OperatorMatrix& rho, std::uint8_t keep)
{
    require_density(rho.entries, "partial_trace");
    const int dims[3] = {2, rho.basis.dim_a(), rho.basis.dim_b()};
    const bool flags[3] = {(keep & kQubit) != 0, (keep & kModeA) != 0, (keep & kModeB) != 0};
    return partial_trace(rho.entries, dims, flags);
}

double purity(const Matrix& rho)
{
    // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
    return kernels::sum_abs2({rho.data(), std::size_t(rho.size())});
}

namespace {

Matrix psd_sqrt(const Matrix& m)
{
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()));
    const Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

} // namespace

double fidelity(const Matrix& rho, const Matrix& sigma)
{
    if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
        throw InvalidArgument("fidelity: dimension mismatch");
    const Matrix s = psd_sqrt(rho);
    Eigen::SelfAdjointEigenSolver<Matrix> es(s * sigma * s, Eigen::EigenvaluesOnly);
    const double tr = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
    return tr * tr;
}

} // namespace cqed
