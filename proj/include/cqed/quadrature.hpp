#pragma once

// Globally adaptive Gauss-Kronrod (7/15) integration over a list of initial
// panels. The panel with the largest error estimate is bisected until the
// summed estimate meets the tolerance.

#include <cstddef>
#include <functional>
#include <span>

namespace cqed::quadrature {

struct Options {
    double rel_tol = 1e-8;
    double abs_tol = 0.0;
    std::size_t max_panels = 400000;
};

struct Result {
    double value = 0.0;
    double error = 0.0;       // estimated absolute error
    double abs_value = 0.0;   // integral of |f|, the cancellation scale
    std::size_t panels = 0;
    bool converged = true;
};

/// Single 15-point Kronrod panel on [a, b] with the QUADPACK error heuristic.
Result gauss_kronrod_15(const std::function<double(double)>& f, double a, double b);

/// Integrates f over [breakpoints.front(), breakpoints.back()] starting from
/// the panels between consecutive breakpoints (at least two, increasing).
Result integrate(const std::function<double(double)>& f, std::span<const double> breakpoints,
                 const Options& opts = {});

} // namespace cqed::quadrature
