#include "cqed/hamiltonians.hpp"

#include "cqed/diagnostics.hpp"
#include "cqed/errors.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace cqed {
namespace {

void guard_capacity(const FockCutoff& cutoff)
{
    if (cutoff.dim() > kMaxHamiltonianDim)
        throw CapacityError("Hamiltonian dimension " + std::to_string(cutoff.dim()) + " exceeds limit " +
                            std::to_string(kMaxHamiltonianDim));
}

// Factor-level building blocks.
struct Factors {
    Matrix iq, ia, ib;
    Matrix a, ad, na;
    Matrix b, bd, nb, xb;

    explicit Factors(const FockCutoff& c)
        : iq(identity(2)), ia(identity(c.dim_a())), ib(identity(c.dim_b())),
          a(annihilation(c.n_max_a())), ad(creation(c.n_max_a())), na(number_operator(c.n_max_a())),
          b(annihilation(c.n_max_b())), bd(creation(c.n_max_b())), nb(number_operator(c.n_max_b())),
          xb(b + bd)
    {
    }
};

Matrix qubit_frequency_operator(const CircuitModel& model, const FockCutoff& cutoff)
{
    Matrix wq = Matrix::Zero(cutoff.dim_b(), cutoff.dim_b());
    for (int n = 0; n <= cutoff.n_max_b(); ++n) wq(n, n) = qubit_frequency(model.phi_b, model.josephson, n);
    return wq;
}

HamiltonianStage make_stage(StageId id, OperatorMatrix m, Frame frame, std::string note, double dropped = 0.0)
{
    return {id, std::move(m), frame, std::move(note), dropped};
}

} // namespace

const char* to_string(StageId id) noexcept
{
    switch (id) {
    case StageId::Full: return "full";
    case StageId::Rotated: return "rotated";
    case StageId::Quadratic: return "quadratic";
    case StageId::JaynesCummings: return "jaynes_cummings";
    case StageId::Dispersive: return "dispersive";
    case StageId::Diagonal: return "diagonal";
    }
    return "?";
}

const char* to_string(Frame f) noexcept
{
    switch (f) {
    case Frame::Lab: return "lab";
    case Frame::LabQubitRotated: return "lab_qubit_rotated";
    case Frame::RotatingB: return "rotating_b";
    case Frame::DispersiveInteraction: return "dispersive_interaction";
    }
    return "?";
}

Matrix qubit_rotation()
{
    // exp(-i theta sy / 2) = cos(theta/2) 1 - i sin(theta/2) sy at theta = pi/2
    const double c = std::cos(std::numbers::pi / 4.0);
    const cplx i(0.0, 1.0);
    return c * identity(2) - i * c * pauli_y();
}

OperatorMatrix rotate_qubit_frame(const OperatorMatrix& h)
{
    const FockCutoff& cut = h.basis;
    const Matrix r = kron(qubit_rotation(), identity(cut.dim_a() * cut.dim_b()));
    return OperatorMatrix(cut, r * h.entries * r.adjoint());
}

HamiltonianStage build_full(const CircuitModel& model, const FockCutoff& cutoff)
{
    guard_capacity(cutoff);
    const Factors f(cutoff);
    const double phi_e = model.phi_e, phi_b = model.phi_b;
    const Matrix cos_b = hermitian_function(f.xb, [&](double x) { return std::cos(phi_e + phi_b * x); });

    Matrix h = model.omega_a * tensor3(f.iq, f.na, f.ib, cutoff).entries +
               model.omega_b * tensor3(f.iq, f.ia, f.nb, cutoff).entries +
               2.0 * model.charging * (2.0 * model.n_g_dc - 1.0) * tensor3(pauli_z(), f.ia, f.ib, cutoff).entries -
               model.g_a * tensor3(pauli_z(), f.a + f.ad, f.ib, cutoff).entries -
               model.josephson * tensor3(pauli_x(), f.ia, cos_b, cutoff).entries;
    return make_stage(StageId::Full, OperatorMatrix(cutoff, std::move(h)), Frame::Lab,
                      "lab frame, charge basis of the qubit");
}

HamiltonianStage build_rotated(const CircuitModel& model, const FockCutoff& cutoff)
{
    guard_capacity(cutoff);
    if (std::abs(model.n_g_dc - 0.5) > 1e-12)
        throw InvalidArgument("build_rotated: requires charge degeneracy n_g_dc = 1/2");
    if (std::abs(model.phi_e) > 1e-12)
        throw InvalidArgument("build_rotated: requires zero external flux phi_e = 0");
    const Factors f(cutoff);
    const double phi_b = model.phi_b;
    const Matrix cos_b = hermitian_function(f.xb, [&](double x) { return std::cos(phi_b * x); });

    Matrix h = model.omega_a * tensor3(f.iq, f.na, f.ib, cutoff).entries +
               model.omega_b * tensor3(f.iq, f.ia, f.nb, cutoff).entries -
               model.g_a * tensor3(pauli_x(), f.a + f.ad, f.ib, cutoff).entries +
               model.josephson * tensor3(pauli_z(), f.ia, cos_b, cutoff).entries;
    return make_stage(StageId::Rotated, OperatorMatrix(cutoff, std::move(h)), Frame::LabQubitRotated,
                      "lab frame, qubit rotated by R = exp(-i pi/4 sigma_y)");
}

HamiltonianStage build_quadratic(const CircuitModel& model, const FockCutoff& cutoff)
{
    guard_capacity(cutoff);
    if (std::abs(model.phi_b) >= 0.2) {
        std::ostringstream os;
        os << "build_quadratic: phi_b = " << model.phi_b << " >= 0.2, small-flux expansion is unreliable";
        warn(os.str());
    }
    const Factors f(cutoff);
    const double ej = model.josephson, p2 = model.phi_b * model.phi_b;
    const Matrix diag_b = ej * (f.ib - p2 * (f.ib + 2.0 * f.nb) / 2.0);
    const Matrix squeeze_b = -(ej * p2 / 2.0) * (f.b * f.b + f.bd * f.bd);

    Matrix h = model.omega_a * tensor3(f.iq, f.na, f.ib, cutoff).entries +
               model.omega_b * tensor3(f.iq, f.ia, f.nb, cutoff).entries +
               tensor3(pauli_z(), f.ia, diag_b + squeeze_b, cutoff).entries -
               model.g_a * tensor3(pauli_x(), f.a + f.ad, f.ib, cutoff).entries;
    return make_stage(StageId::Quadratic, OperatorMatrix(cutoff, std::move(h)), Frame::LabQubitRotated,
                      "lab frame, qubit rotated; cosine expanded to O(phi_b^2)");
}

HamiltonianStage build_jc(const CircuitModel& model, const FockCutoff& cutoff)
{
    guard_capacity(cutoff);
    const Factors f(cutoff);
    const Matrix wq = qubit_frequency_operator(model, cutoff);

    Matrix h = model.omega_a * tensor3(f.iq, f.na, f.ib, cutoff).entries +
               0.5 * tensor3(pauli_z(), f.ia, wq, cutoff).entries -
               model.g_a * (tensor3(sigma_plus(), f.a, f.ib, cutoff).entries +
                            tensor3(sigma_minus(), f.ad, f.ib, cutoff).entries);

    // Terms removed on the way here: the oscillating (b^2 + b'^2) sz piece and
    // the counter-rotating a s- + a' s+ piece.
    const double ej = model.josephson, p2 = model.phi_b * model.phi_b;
    const Matrix dropped = -(ej * p2 / 2.0) * tensor3(pauli_z(), f.ia, f.b * f.b + f.bd * f.bd, cutoff).entries -
                           model.g_a * (tensor3(sigma_minus(), f.a, f.ib, cutoff).entries +
                                        tensor3(sigma_plus(), f.ad, f.ib, cutoff).entries);
    return make_stage(StageId::JaynesCummings, OperatorMatrix(cutoff, std::move(h)), Frame::RotatingB,
                      "interaction picture w.r.t. omega_b b'b; RWA applied", max_abs(dropped));
}

HamiltonianStage build_dispersive(const CircuitModel& model, const FockCutoff& cutoff)
{
    guard_capacity(cutoff);
    const Factors f(cutoff);
    const Matrix wq = qubit_frequency_operator(model, cutoff);
    const Matrix one = identity(int(cutoff.dim()));
    const Matrix na = tensor3(f.iq, f.na, f.ib, cutoff).entries;
    const Matrix sz = tensor3(pauli_z(), f.ia, f.ib, cutoff).entries;
    const Matrix wq_full = tensor3(f.iq, f.ia, wq, cutoff).entries;
    const double g2 = model.g_a * model.g_a, wa = model.omega_a;

    Matrix h = wa * na + 0.5 * wq_full * sz -
               (g2 / wa) * (one + wq_full / wa) * (sz * na + 0.5 * (sz + one));
    return make_stage(StageId::Dispersive, OperatorMatrix(cutoff, std::move(h)), Frame::RotatingB,
                      "interaction picture w.r.t. omega_b b'b; dispersive approximation");
}

HamiltonianStage build_diagonal(const EffectiveParams& eff, const FockCutoff& cutoff)
{
    guard_capacity(cutoff);
    const Factors f(cutoff);
    const double wp = eff.omega_a_prime, chi = eff.chi;
    const Matrix na = kron(f.na, f.ib);
    const Matrix nb = kron(f.ia, f.nb);
    const Matrix nanb = kron(f.na, f.nb);
    const Matrix one = identity(cutoff.dim_a() * cutoff.dim_b());

    const Matrix h0 = wp * na - chi * nanb;
    const Matrix h1 = -wp * (na + one) + chi * nb + chi * nanb;
    Matrix p0 = Matrix::Zero(2, 2), p1 = Matrix::Zero(2, 2);
    p0(0, 0) = 1.0;
    p1(1, 1) = 1.0;
    Matrix h = kron(p0, h0) + kron(p1, h1);
    return make_stage(StageId::Diagonal, OperatorMatrix(cutoff, std::move(h)), Frame::DispersiveInteraction,
                      "interaction picture w.r.t. omega_a a'a + omega_q(b'b) sigma_z/2");
}

OperatorMatrix dispersive_free_part(const CircuitModel& model, const FockCutoff& cutoff)
{
    const Factors f(cutoff);
    const Matrix wq = qubit_frequency_operator(model, cutoff);
    Matrix h = model.omega_a * tensor3(f.iq, f.na, f.ib, cutoff).entries +
               0.5 * tensor3(pauli_z(), f.ia, wq, cutoff).entries;
    return OperatorMatrix(cutoff, std::move(h));
}

OperatorMatrix to_frame(const HamiltonianStage& stage, Frame target, const CircuitModel& model)
{
    if (stage.frame == target) return stage.matrix;
    if (stage.frame == Frame::DispersiveInteraction && target == Frame::RotatingB) {
        const OperatorMatrix free = dispersive_free_part(model, stage.matrix.basis);
        return OperatorMatrix(stage.matrix.basis, stage.matrix.entries + free.entries);
    }
    throw InvalidArgument(std::string("to_frame: no conversion from frame '") + to_string(stage.frame) +
                          "' to '" + to_string(target) + "'");
}

double quadratic_expansion_residual(const CircuitModel& model, const FockCutoff& cutoff)
{
    const Matrix diff = build_quadratic(model, cutoff).matrix.entries - build_rotated(model, cutoff).matrix.entries;
    double worst = 0.0;
    for (Eigen::Index r = 0; r < diff.rows(); ++r) {
        if (label_at(cutoff, std::size_t(r)).n == cutoff.n_max_b()) continue;
        for (Eigen::Index c = 0; c < diff.cols(); ++c) {
            if (label_at(cutoff, std::size_t(c)).n == cutoff.n_max_b()) continue;
            worst = std::max(worst, std::abs(diff(r, c)));
        }
    }
    return worst;
}

} // namespace cqed
