#include "cqed/spectrum.hpp"

#include "cqed/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace cqed {

double eigenvalue(const BasisLabel& label, const EffectiveParams& eff)
{
    const double shifted = eff.omega_a_prime - eff.chi * label.n;
    return label.i == 0 ? shifted * label.m : -shifted * (label.m + 1);
}

double energy_difference(const BasisLabel& a, const BasisLabel& b, const EffectiveParams& eff)
{
    return eigenvalue(a, eff) - eigenvalue(b, eff);
}

std::vector<EnergyLevel> level_table(const EffectiveParams& eff, const FockCutoff& cutoff)
{
    std::vector<EnergyLevel> levels;
    levels.reserve(cutoff.dim());
    for (const auto& l : all_labels(cutoff)) levels.push_back({l, eigenvalue(l, eff)});
    return levels;
}

std::vector<DegeneracyClass> cluster_levels(std::vector<EnergyLevel> levels, double tol)
{
    if (!(tol > 0.0)) throw InvalidArgument("dfs_find: tolerance must be > 0");
    std::stable_sort(levels.begin(), levels.end(), [](const EnergyLevel& x, const EnergyLevel& y) {
        return x.energy < y.energy || (x.energy == y.energy && x.label < y.label);
    });

    std::vector<DegeneracyClass> out;
    double sum = 0.0;
    for (std::size_t k = 0; k < levels.size(); ++k) {
        if (k == 0 || levels[k].energy - levels[k - 1].energy >= tol) {
            if (!out.empty()) out.back().energy = sum / double(out.back().members.size());
            out.push_back({0.0, {}, tol});
            sum = 0.0;
        }
        out.back().members.push_back(levels[k].label);
        sum += levels[k].energy;
    }
    if (!out.empty()) out.back().energy = sum / double(out.back().members.size());
    for (auto& c : out) std::sort(c.members.begin(), c.members.end());
    return out;
}

std::vector<DegeneracyClass> dfs_find(const EffectiveParams& eff, const FockCutoff& cutoff, std::optional<double> tol)
{
    auto levels = level_table(eff, cutoff);
    double t = 0.0;
    if (tol) {
        t = *tol;
    } else {
        double emax = 0.0;
        for (const auto& l : levels) emax = std::max(emax, std::abs(l.energy));
        t = emax > 0.0 ? 1e-9 * emax : 1e-9;
    }
    return cluster_levels(std::move(levels), t);
}

std::vector<DegeneracyClass> dfs_find_exact(Rational ratio, double chi, const FockCutoff& cutoff)
{
    if (ratio.den <= 0) throw InvalidArgument("dfs_find_exact: denominator must be positive");
    if (chi == 0.0) throw InvalidArgument("dfs_find_exact: chi must be nonzero (ratio undefined)");

    // E * den / chi = (num - den n) m          for i = 0
    //               = -(num - den n)(m + 1)    for i = 1
    std::map<long long, std::vector<BasisLabel>> groups;
    for (const auto& l : all_labels(cutoff)) {
        const long long shifted = ratio.num - ratio.den * l.n;
        const long long key = l.i == 0 ? shifted * l.m : -shifted * (l.m + 1);
        groups[key].push_back(l);
    }

    std::vector<DegeneracyClass> out;
    for (auto& [key, members] : groups) {
        std::sort(members.begin(), members.end());
        out.push_back({double(key) * chi / double(ratio.den), std::move(members), 0.0});
    }
    if (chi < 0.0) std::reverse(out.begin(), out.end());
    return out;
}

std::vector<DegeneracyClass> protected_classes(const std::vector<DegeneracyClass>& classes)
{
    std::vector<DegeneracyClass> out;
    std::copy_if(classes.begin(), classes.end(), std::back_inserter(out),
                 [](const DegeneracyClass& c) { return c.is_dfs(); });
    return out;
}

DfsVerification dfs_verify(const DegeneracyClass& cls, const EffectiveParams& eff, const SpectralDensity& d,
                           const BathState& bath, std::span<const double> t_grid)
{
    if (cls.members.empty()) throw InvalidArgument("dfs_verify: class has no members");
    DfsVerification rep;
    rep.t_grid.assign(t_grid.begin(), t_grid.end());
    if (t_grid.empty()) return rep;

    std::vector<ReservoirIntegrals> q;
    q.reserve(t_grid.size());
    for (double t : t_grid) {
        q.push_back(reservoir_integrals(d, bath, t));
        rep.max_q2 = std::max(rep.max_q2, q.back().q2);
    }

    for (const auto& a : cls.members)
        for (const auto& b : cls.members) {
            if (a == b) continue;
            const double ea = eigenvalue(a, eff), eb = eigenvalue(b, eff);
            PairVerification p{a, b, ea - eb, ea * ea - eb * eb, {}, {}};
            p.damping.reserve(t_grid.size());
            p.phase_shift.reserve(t_grid.size());
            for (const auto& qt : q) {
                p.damping.push_back(damping(ea, eb, qt.q2));
                p.phase_shift.push_back(phase_shift(ea, eb, qt.q1));
                rep.max_damping = std::max(rep.max_damping, p.damping.back());
                rep.max_abs_phase_shift = std::max(rep.max_abs_phase_shift, std::abs(p.phase_shift.back()));
            }
            rep.pairs.push_back(std::move(p));
        }

    const double scale = std::abs(eff.omega_a_prime) + std::abs(eff.chi);
    const double gap = std::max(cls.tolerance, 1e-12 * scale);
    rep.damping_bound = gap * gap * rep.max_q2;
    rep.protected_ = rep.max_damping <= rep.damping_bound;
    return rep;
}

namespace {

double energy_spread(const std::vector<BasisLabel>& labels, const EffectiveParams& eff)
{
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& l : labels) {
        const double e = eigenvalue(l, eff);
        lo = std::min(lo, e);
        hi = std::max(hi, e);
    }
    return hi - lo;
}

} // namespace

std::string dfs_discrepancy_note(const std::vector<DegeneracyClass>& classes, const EffectiveParams& eff,
                                 const FockCutoff& cutoff)
{
    if (eff.chi == 0.0) return {};
    const double ratio = eff.omega_a_prime / eff.chi;
    const double n0 = std::round(ratio);
    if (std::abs(ratio - n0) > 1e-9 * std::max(1.0, std::abs(ratio)) || n0 < 0.0) return {};

    std::ostringstream os;
    os << "omega'_a/chi = " << n0 << " is an integer. ";

    // Class holding every (m, n0, i): fixed B photon number.
    bool b_fixed_found = false;
    if (n0 <= cutoff.n_max_b()) {
        for (const auto& c : classes) {
            std::size_t hits = 0;
            for (const auto& l : c.members)
                if (l.n == int(n0)) ++hits;
            if (hits == std::size_t(2 * cutoff.dim_a())) {
                b_fixed_found = true;
                os << "The degenerate class at E = " << c.energy << " contains every label with resonator-B photon "
                   << "number n = " << n0 << " (all m, both qubit levels), so fixing resonator B in |" << n0
                   << "> protects the qubit + resonator-A subsystem. ";
                break;
            }
        }
    }
    if (!b_fixed_found) os << "No class fixes the B photon number n = " << n0 << " within the cutoff. ";

    if (n0 <= cutoff.n_max_a()) {
        std::vector<BasisLabel> a_fixed;
        for (int n = 0; n <= cutoff.n_max_b(); ++n)
            for (int i = 0; i < 2; ++i) a_fixed.push_back({int(n0), n, i});
        os << "Fixing resonator A in |m0 = " << n0 << "> instead gives level spread "
           << energy_spread(a_fixed, eff)
           << " over {(m0, n, i)}, i.e. no protection of qubit + resonator B; the protected index is n (B), "
              "not m (A).";
    } else {
        os << "The alternative reading (resonator A fixed in |m0 = " << n0
           << ">) lies outside the A cutoff and is not degenerate in any case.";
    }
    os << " Classes shown are limited to the truncated label set; the fixed-n class extends to all m "
          "in the untruncated model.";
    return os.str();
}

} // namespace cqed
