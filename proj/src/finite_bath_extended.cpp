#include "finite_bath_extended.hpp"

#include "parallel.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/eigen.hpp>

namespace cqed::detail {
using Real = boost::multiprecision::cpp_bin_float_50;
}

// Boost's NumTraits for multiprecision types lacks infinity(), which Eigen's
// generic hypot needs; route it to the Boost implementation.
namespace Eigen::internal {
template <>
struct hypot_impl<cqed::detail::Real> {
    static cqed::detail::Real run(const cqed::detail::Real& x, const cqed::detail::Real& y)
    {
        return boost::multiprecision::hypot(x, y);
    }
};
} // namespace Eigen::internal

#include <Eigen/Eigenvalues>

namespace cqed::detail {
namespace {

using RMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

struct XComplex {
    Real re, im;
};

XComplex mul(const XComplex& a, const XComplex& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }

// One bath mode coupled to one system energy E:
//   w n + E c (b + b') + E^2 c^2 / w
struct ModeBlock {
    RMatrix vecs;
    RVector vals;
    RMatrix weighted;  // vecs^T * sqrt(p_j) e_j for occupied j
};

ModeBlock mode_block(const Real& e, const BathMode& m, const std::vector<Real>& p, const std::vector<int>& occupied)
{
    const int d = m.fock_cutoff + 1;
    const Real w(m.omega), c(m.coupling);
    RMatrix h = RMatrix::Zero(d, d);
    for (int j = 0; j < d; ++j) {
        h(j, j) = w * j + e * e * c * c / w;
        if (j + 1 < d) h(j, j + 1) = h(j + 1, j) = e * c * sqrt(Real(j + 1));
    }
    Eigen::SelfAdjointEigenSolver<RMatrix> es(h);
    ModeBlock b{es.eigenvectors(), es.eigenvalues(), RMatrix(d, Eigen::Index(occupied.size()))};
    for (std::size_t k = 0; k < occupied.size(); ++k)
        b.weighted.col(Eigen::Index(k)) = sqrt(p[std::size_t(occupied[k])]) * b.vecs.row(occupied[k]).transpose();
    return b;
}

} // namespace

void finite_bath_extended(const Matrix& rho0, const std::vector<double>& sys_e, const std::vector<double>& levels,
                          const std::vector<std::size_t>& level_index, const FiniteBathSpec& spec,
                          std::span<const double> t_grid, unsigned workers, FiniteBathReport& rep)
{
    const std::size_t nl = levels.size(), nm = spec.modes.size();

    // Truncated thermal populations per mode.
    std::vector<std::vector<Real>> pops(nm);
    std::vector<std::vector<int>> occupied(nm);
    for (std::size_t k = 0; k < nm; ++k) {
        const auto& m = spec.modes[k];
        const Real ratio = Real(m.occupation) / (1 + Real(m.occupation));
        Real sum = 0;
        for (int j = 0; j <= m.fock_cutoff; ++j) {
            pops[k].push_back(j == 0 ? Real(1) : pow(ratio, j));
            sum += pops[k].back();
        }
        for (int j = 0; j <= m.fock_cutoff; ++j) {
            pops[k][std::size_t(j)] /= sum;
            if (pops[k][std::size_t(j)] > 0) occupied[k].push_back(j);
        }
    }

    std::vector<ModeBlock> blocks(nl * nm);
    parallel_for(blocks.size(), workers, [&](std::size_t b) {
        const std::size_t l = b / nm, k = b % nm;
        blocks[b] = mode_block(Real(levels[l]), spec.modes[k], pops[k], occupied[k]);
    });

    const Eigen::Index d = rho0.rows();
    rep.oracle.resize(t_grid.size());
    rep.analytic.resize(t_grid.size());
    rep.deviation.resize(t_grid.size());
    parallel_for(t_grid.size(), workers, [&](std::size_t it) {
        const Real t(t_grid[it]);

        // Per (level, mode): columns of exp(-i H t) applied to the weighted initial states.
        std::vector<RMatrix> re(nl * nm), im(nl * nm);
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            const auto& blk = blocks[b];
            RVector c(blk.vals.size()), s(blk.vals.size());
            for (Eigen::Index j = 0; j < c.size(); ++j) {
                c(j) = cos(blk.vals(j) * t);
                s(j) = -sin(blk.vals(j) * t);
            }
            re[b] = blk.vecs * (c.asDiagonal() * blk.weighted);
            im[b] = blk.vecs * (s.asDiagonal() * blk.weighted);
        }

        // overlap(l1, l2) = exp(-i (E1 - E2) t) prod_k sum_j <phi_{l2,k}^j | phi_{l1,k}^j>
        std::vector<XComplex> overlap(nl * nl);
        for (std::size_t l1 = 0; l1 < nl; ++l1)
            for (std::size_t l2 = 0; l2 < nl; ++l2) {
                const Real phase = -(Real(levels[l1]) - Real(levels[l2])) * t;
                XComplex acc{cos(phase), sin(phase)};
                for (std::size_t k = 0; k < nm; ++k) {
                    const std::size_t b1 = l1 * nm + k, b2 = l2 * nm + k;
                    const Real ore = (re[b2].array() * re[b1].array() + im[b2].array() * im[b1].array()).sum();
                    const Real oim = (re[b2].array() * im[b1].array() - im[b2].array() * re[b1].array()).sum();
                    acc = mul(acc, {ore, oim});
                }
                overlap[l1 * nl + l2] = acc;
            }

        // Closed form with discrete-mode Q1, Q2.
        Real q1 = 0, q2 = 0;
        for (const auto& m : spec.modes) {
            const Real w(m.omega), c(m.coupling);
            const Real x = c * c / (w * w), sh = sin(w * t / 2);
            q1 += x * sin(w * t);
            q2 += 2 * x * sh * sh * (2 * Real(m.occupation) + 1);
        }

        Matrix oracle(d, d), analytic(d, d);
        Real worst = 0;
        for (Eigen::Index c = 0; c < d; ++c)
            for (Eigen::Index r = 0; r < d; ++r) {
                const XComplex z0{Real(rho0(r, c).real()), Real(rho0(r, c).imag())};
                const XComplex o = mul(z0, overlap[level_index[std::size_t(r)] * nl + level_index[std::size_t(c)]]);
                const Real er(sys_e[std::size_t(r)]), ec(sys_e[std::size_t(c)]);
                const Real phase = -(er - ec) * t - (er * er - ec * ec) * q1;
                const Real damp = exp(-(er - ec) * (er - ec) * q2);
                const XComplex a = mul(z0, {damp * cos(phase), damp * sin(phase)});
                worst = std::max(worst, Real(hypot(o.re - a.re, o.im - a.im)));
                oracle(r, c) = cplx(static_cast<double>(o.re), static_cast<double>(o.im));
                analytic(r, c) = cplx(static_cast<double>(a.re), static_cast<double>(a.im));
            }
        rep.oracle[it] = std::move(oracle);
        rep.analytic[it] = std::move(analytic);
        rep.deviation[it] = static_cast<double>(worst);
    });
    for (double dv : rep.deviation) rep.max_deviation = std::max(rep.max_deviation, dv);
}

} // namespace cqed::detail
