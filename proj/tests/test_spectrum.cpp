#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cqed/errors.hpp"
#include "cqed/spectrum.hpp"

#include <algorithm>

using namespace cqed;

namespace {

EffectiveParams ratio(double r, double chi = 1.0)
{
    EffectiveParams e;
    e.chi = chi;
    e.omega_a_prime = r * chi;
    return e;
}

} // namespace

TEST_CASE("closed-form levels")
{
    const EffectiveParams e = ratio(3.0, 0.25);
    CHECK(eigenvalue({2, 1, 0}, e) == doctest::Approx((0.75 - 0.25) * 2));
    CHECK(eigenvalue({2, 1, 1}, e) == doctest::Approx(-(0.75 - 0.25) * 3));
    CHECK(eigenvalue({0, 0, 0}, e) == 0.0);
    CHECK(energy_difference({1, 0, 0}, {0, 0, 1}, e) == doctest::Approx(0.75 + 0.75));
    const auto levels = level_table(e, FockCutoff(2, 2));
    REQUIRE(levels.size() == 18);
    CHECK(levels[5].label == BasisLabel{1, 2, 0});
}

TEST_CASE("integer ratio gives the fixed-n class")
{
    const FockCutoff cut(4, 4);
    const auto classes = dfs_find_exact({3, 1}, 1.0, cut);
    const auto it = std::find_if(classes.begin(), classes.end(), [](const DegeneracyClass& c) {
        return std::count_if(c.members.begin(), c.members.end(), [](const BasisLabel& l) { return l.n == 3; }) == 10;
    });
    REQUIRE(it != classes.end());
    CHECK(it->energy == 0.0);
    // The E = 0 class also holds every (0, n, 0).
    CHECK(it->members.size() == 10 + 4);

    const auto approx = dfs_find(ratio(3.0), cut);
    CHECK(approx.size() == classes.size());
    for (std::size_t k = 0; k < classes.size(); ++k) CHECK(approx[k].members == classes[k].members);
}

TEST_CASE("non-integer ratio")
{
    const FockCutoff cut(3, 3);
    const auto classes = dfs_find(ratio(2.5), cut);
    for (const auto& c : protected_classes(classes))
        for (const auto& l : c.members) CHECK(eigenvalue(l, ratio(2.5)) == doctest::Approx(c.energy));
    CHECK(dfs_discrepancy_note(classes, ratio(2.5), cut).empty());
}

TEST_CASE("exact and tolerance clustering agree under scaling")
{
    const FockCutoff cut(5, 5);
    for (double chi : {1e-3, 1.0, 3.6e8, -2.0}) {
        const auto exact = dfs_find_exact({7, 2}, chi, cut);
        const auto tol = dfs_find(ratio(3.5, chi), cut);
        REQUIRE(exact.size() == tol.size());
        for (std::size_t k = 0; k < exact.size(); ++k) CHECK(exact[k].members == tol[k].members);
    }
    CHECK_THROWS_AS(dfs_find_exact({3, 0}, 1.0, cut), InvalidArgument);
    CHECK_THROWS_AS(dfs_find_exact({3, 1}, 0.0, cut), InvalidArgument);
}

TEST_CASE("tolerance controls merging")
{
    std::vector<EnergyLevel> levels{{{0, 0, 0}, 0.0}, {{1, 0, 0}, 0.5e-3}, {{2, 0, 0}, 1.0e-3}, {{3, 0, 0}, 1.0}};
    CHECK(cluster_levels(levels, 1e-3).size() == 2);  // chained through the middle level
    CHECK(cluster_levels(levels, 1e-4).size() == 4);
}

TEST_CASE("verification of a protected class")
{
    const FockCutoff cut(2, 4);
    const EffectiveParams e = ratio(3.0);
    const auto classes = dfs_find_exact({3, 1}, 1.0, cut);
    const SpectralDensity d = SpectralDensity::ohmic(0.1, 1.0, 1.0);
    const std::vector<double> t{0.0, 1.0, 10.0, 50.0};
    for (const auto& c : protected_classes(classes)) {
        const DfsVerification v = dfs_verify(c, e, d, BathState::with_beta(1.0), t);
        CHECK(v.protected_);
        CHECK(v.max_damping == 0.0);
        CHECK(v.pairs.size() == c.members.size() * (c.members.size() - 1));
    }

    DegeneracyClass fake;
    fake.members = {{0, 0, 0}, {1, 0, 0}};
    CHECK_FALSE(dfs_verify(fake, e, d, BathState::zero_temperature(), t).protected_);
}

TEST_CASE("discrepancy note names resonator B")
{
    const FockCutoff cut(4, 4);
    const auto note = dfs_discrepancy_note(dfs_find_exact({3, 1}, 1.0, cut), ratio(3.0), cut);
    CHECK(note.find("resonator-B photon number n = 3") != std::string::npos);
    CHECK(note.find("not m (A)") != std::string::npos);
}
