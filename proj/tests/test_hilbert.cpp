#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cqed/errors.hpp"
#include "cqed/hilbert.hpp"

#include <random>

using namespace cqed;

namespace {

Matrix random_density(int dim, unsigned seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n(0.0, 1.0);
    Matrix g(dim, dim);
    for (int c = 0; c < dim; ++c)
        for (int r = 0; r < dim; ++r) g(r, c) = cplx(n(rng), n(rng));
    Matrix rho = g * g.adjoint();
    return rho / rho.trace();
}

} // namespace

TEST_CASE("flat index layout")
{
    const FockCutoff cut(2, 3);
    CHECK(cut.dim() == 24);
    CHECK(flat_index(cut, {0, 0, 0}) == 0);
    CHECK(flat_index(cut, {0, 1, 0}) == 1);
    CHECK(flat_index(cut, {1, 0, 0}) == 4);
    CHECK(flat_index(cut, {0, 0, 1}) == 12);
    CHECK(flat_index(cut, {2, 3, 1}) == 23);
    const auto labels = all_labels(cut);
    REQUIRE(labels.size() == cut.dim());
    for (std::size_t k = 0; k < labels.size(); ++k) {
        CHECK(flat_index(cut, labels[k]) == k);
        CHECK(label_at(cut, k) == labels[k]);
    }
    CHECK_FALSE(contains(cut, {3, 0, 0}));
    CHECK_THROWS_AS(flat_index(cut, {0, 4, 0}), InvalidArgument);
    CHECK_THROWS_AS(FockCutoff(-1, 2), InvalidArgument);
}

TEST_CASE("ladder operators")
{
    const Matrix a = annihilation(4);
    CHECK(a(1, 2) == cplx(std::sqrt(2.0)));
    CHECK(max_abs(creation(4) - a.adjoint()) == 0.0);
    const Matrix comm = a * a.adjoint() - a.adjoint() * a;
    for (int k = 0; k < 4; ++k) CHECK(comm(k, k).real() == doctest::Approx(1.0));
    CHECK(comm(4, 4).real() == doctest::Approx(-4.0));
    CHECK(max_abs(number_operator(4) - a.adjoint() * a) < 1e-15);
}

TEST_CASE("pauli conventions")
{
    CHECK(pauli_z()(0, 0) == cplx(-1.0));
    CHECK(pauli_z()(1, 1) == cplx(1.0));
    CHECK(sigma_plus()(1, 0) == cplx(1.0));
    CHECK(max_abs(sigma_minus() - sigma_plus().adjoint()) == 0.0);
    const Matrix comm = sigma_plus() * sigma_minus() - sigma_minus() * sigma_plus();
    CHECK(max_abs(comm - pauli_z()) < 1e-15);
    CHECK(max_abs(pauli_x() * pauli_y() - cplx(0, 1) * pauli_z()) < 1e-15);
}

TEST_CASE("tensor3 ordering")
{
    const FockCutoff cut(1, 2);
    const OperatorMatrix n_b = tensor3(identity(2), identity(2), number_operator(2), cut);
    const OperatorMatrix sz = tensor3(pauli_z(), identity(2), identity(3), cut);
    for (const auto& l : all_labels(cut)) {
        CHECK(n_b(l, l) == cplx(double(l.n)));
        CHECK(sz(l, l) == cplx(l.i == 1 ? 1.0 : -1.0));
    }
    CHECK_THROWS_AS(tensor3(identity(2), identity(3), identity(3), cut), InvalidArgument);
}

TEST_CASE("states")
{
    const FockCutoff cut(3, 2);
    const StateVector s = number_state(cut, {2, 1, 1});
    CHECK(s.amplitude({2, 1, 1}) == cplx(1.0));
    CHECK(s.amplitudes().norm() == doctest::Approx(1.0));

    const std::pair<BasisLabel, cplx> terms[] = {{{0, 0, 0}, 1.0}, {{1, 0, 1}, cplx(0, 1)}};
    const StateVector sup = superposition(cut, terms);
    CHECK(std::abs(sup.amplitude({1, 0, 1}) - cplx(0, 1) / std::sqrt(2.0)) < 1e-15);
    CHECK_THROWS_AS(StateVector(cut, Vector::Zero(Eigen::Index(cut.dim()))), InvalidArgument);

    const CoherentAmplitudes c = coherent_amplitudes(30, cplx(1.5, -0.5));
    const double n2 = std::norm(cplx(1.5, -0.5));
    CHECK(std::abs(c.amplitudes(0)) == doctest::Approx(std::exp(-n2 / 2)).epsilon(1e-10));
    CHECK(c.norm_deficit < 1e-15);
    CHECK(std::abs(c.amplitudes(2)) == doctest::Approx(std::exp(-n2 / 2) * n2 / std::sqrt(2.0)).epsilon(1e-10));

    const StateVector coh = coherent_state(cut, Mode::B, 0.3);
    CHECK(std::abs(coh.amplitude({0, 1, 0})) > 0.0);
    CHECK(coh.amplitude({1, 0, 0}) == cplx(0.0));
}

TEST_CASE("density checks and partial trace")
{
    const Matrix rho = random_density(12, 3);
    const DensityCheck ok = check_density(rho);
    CHECK(ok.valid);
    CHECK(ok.trace_error < 1e-14);
    Matrix bad = rho;
    bad(0, 1) += 0.1;
    CHECK_FALSE(check_density(bad).valid);
    CHECK_THROWS_AS(require_density(bad, "test"), InvalidArgument);

    const FockCutoff cut(1, 2);
    const Matrix q = random_density(2, 4), a = random_density(2, 5), b = random_density(3, 6);
    const OperatorMatrix prod(cut, kron(kron(q, a), b));
    CHECK(max_abs(partial_trace(prod, kQubit) - q) < 1e-14);
    CHECK(max_abs(partial_trace(prod, kModeB) - b) < 1e-14);
    CHECK(max_abs(partial_trace(prod, kQubit | kModeB) - kron(q, b)) < 1e-14);
    CHECK(max_abs(partial_trace(prod, kQubit | kModeA | kModeB) - prod.entries) == 0.0);
}

TEST_CASE("purity and fidelity")
{
    const FockCutoff cut(1, 1);
    const OperatorMatrix pure = density_matrix(number_state(cut, {1, 0, 1}));
    CHECK(purity(pure.entries) == doctest::Approx(1.0));
    const Matrix mixed = Matrix::Identity(4, 4) / 4.0;
    CHECK(purity(mixed) == doctest::Approx(0.25));

    const Matrix rho = random_density(4, 8), sigma = random_density(4, 9);
    CHECK(fidelity(rho, rho) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(fidelity(rho, sigma) == doctest::Approx(fidelity(sigma, rho)).epsilon(1e-10));
    CHECK(fidelity(rho, sigma) <= 1.0 + 1e-12);

    // Pure states: F = |<a|b>|^2.
    Vector va(2), vb(2);
    va << 1.0, 0.0;
    vb << std::cos(0.4), std::sin(0.4);
    const double f = fidelity(va * va.adjoint(), vb * vb.adjoint());
    CHECK(f == doctest::Approx(std::cos(0.4) * std::cos(0.4)).epsilon(1e-10));
}
