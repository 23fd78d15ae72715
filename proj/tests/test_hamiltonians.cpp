#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cqed/errors.hpp"
#include "cqed/hamiltonians.hpp"
#include "cqed/spectrum.hpp"

#include <Eigen/Eigenvalues>

using namespace cqed;

namespace {

CircuitModel model()
{
    CircuitModel m;
    m.omega_a = 1.0;
    m.omega_b = 0.8;
    m.charging = 1.3;
    m.josephson = 0.05;
    m.g_a = 0.01;
    m.phi_b = 0.1;
    return m;
}

} // namespace

TEST_CASE("all stages are hermitian and tagged")
{
    const FockCutoff cut(3, 3);
    const CircuitModel m = model();
    const HamiltonianStage stages[] = {build_full(m, cut), build_rotated(m, cut), build_quadratic(m, cut),
                                       build_jc(m, cut), build_dispersive(m, cut),
                                       build_diagonal(effective_params(m), cut)};
    const Frame frames[] = {Frame::Lab, Frame::LabQubitRotated, Frame::LabQubitRotated,
                            Frame::RotatingB, Frame::RotatingB, Frame::DispersiveInteraction};
    for (std::size_t k = 0; k < 6; ++k) {
        CHECK(stages[k].matrix.basis == cut);
        CHECK(stages[k].frame == frames[k]);
        CHECK(hermiticity_residual(stages[k].matrix.entries) < 1e-15);
    }
    CHECK(stages[3].dropped_term_norm > 0.0);
}

TEST_CASE("qubit rotation maps sz to sx")
{
    const Matrix r = qubit_rotation();
    CHECK(max_abs(r * pauli_z() * r.adjoint() - pauli_x()) < 1e-15);
    CHECK(max_abs(r * pauli_x() * r.adjoint() + pauli_z()) < 1e-15);
}

TEST_CASE("rotated stage is the full stage in the rotated frame")
{
    const FockCutoff cut(3, 4);
    const CircuitModel m = model();
    const OperatorMatrix rot = rotate_qubit_frame(build_full(m, cut).matrix);
    CHECK(max_abs(rot.entries - build_rotated(m, cut).matrix.entries) < 1e-14);

    CircuitModel off = m;
    off.n_g_dc = 0.4;
    CHECK_THROWS_AS(build_rotated(off, cut), InvalidArgument);
}

TEST_CASE("quadratic expansion error scales as phi_b^4")
{
    CircuitModel m = model();
    m.josephson = 0.5;
    const FockCutoff cut(2, 10);
    m.phi_b = 0.1;
    const double r1 = quadratic_expansion_residual(m, cut);
    m.phi_b = 0.05;
    const double r2 = quadratic_expansion_residual(m, cut);
    CHECK(r1 / r2 == doctest::Approx(16.0).epsilon(0.2));
}

TEST_CASE("dispersive minus free part equals diagonal")
{
    const FockCutoff cut(5, 4);
    const CircuitModel m = model();
    const Matrix lhs = build_dispersive(m, cut).matrix.entries - dispersive_free_part(m, cut).entries;
    const Matrix rhs = build_diagonal(effective_params(m), cut).matrix.entries;
    CHECK(max_abs(lhs - rhs) < 1e-15);
}

TEST_CASE("diagonal stage eigenvalues")
{
    const FockCutoff cut(8, 8);
    EffectiveParams e;
    e.omega_a_prime = 0.73;
    e.chi = 0.041;
    const Matrix h = build_diagonal(e, cut).matrix.entries;
    CHECK(max_abs(h - Matrix(h.diagonal().asDiagonal())) == 0.0);
    for (const auto& l : all_labels(cut)) {
        const double expect = l.i == 0 ? (0.73 - 0.041 * l.n) * l.m : -(0.73 - 0.041 * l.n) * (l.m + 1);
        const auto k = Eigen::Index(flat_index(cut, l));
        CHECK(h(k, k).real() == doctest::Approx(expect).epsilon(1e-14));
    }
}

TEST_CASE("frame conversion")
{
    const FockCutoff cut(2, 2);
    const CircuitModel m = model();
    const HamiltonianStage d = build_diagonal(effective_params(m), cut);
    const OperatorMatrix back = to_frame(d, Frame::RotatingB, m);
    CHECK(max_abs(back.entries - build_dispersive(m, cut).matrix.entries) < 1e-15);
    CHECK(max_abs(to_frame(d, Frame::DispersiveInteraction, m).entries - d.matrix.entries) == 0.0);
    CHECK_THROWS_WITH_AS(to_frame(d, Frame::Lab, m), doctest::Contains("dispersive_interaction"), InvalidArgument);
}

TEST_CASE("capacity guard")
{
    CHECK_THROWS_AS(build_full(model(), FockCutoff(60, 60)), CapacityError);
}
