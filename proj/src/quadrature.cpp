#include "cqed/quadrature.hpp"

#include "cqed/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace cqed::quadrature {
namespace {

// Kronrod abscissae/weights on [-1, 1] (non-negative half) and the embedded
// 7-point Gauss weights for abscissae 1, 3, 5, 7.
constexpr std::array<double, 8> kXgk{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = std::numeric_limits<double>::min();

struct Panel {
    double a, b;
    Result r;
};

struct ByError {
    bool operator()(const Panel& x, const Panel& y) const { return x.r.error < y.r.error; }
};

} // namespace

Result gauss_kronrod_15(const std::function<double(double)>& f, double a, double b)
{
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double abs_half = std::abs(half);

    std::array<double, 7> fv1{}, fv2{};
    const double fc = f(center);
    double res_g = fc * kWg[3];
    double res_k = fc * kWgk[7];
    double res_abs = std::abs(res_k);

    for (int j = 0; j < 3; ++j) {
        const int jt = 2 * j + 1;
        const double dx = half * kXgk[jt];
        const double f1 = f(center - dx), f2 = f(center + dx);
        fv1[jt] = f1;
        fv2[jt] = f2;
        res_g += kWg[j] * (f1 + f2);
        res_k += kWgk[jt] * (f1 + f2);
        res_abs += kWgk[jt] * (std::abs(f1) + std::abs(f2));
    }
    for (int j = 0; j < 4; ++j) {
        const int jt = 2 * j;
        const double dx = half * kXgk[jt];
        const double f1 = f(center - dx), f2 = f(center + dx);
        fv1[jt] = f1;
        fv2[jt] = f2;
        res_k += kWgk[jt] * (f1 + f2);
        res_abs += kWgk[jt] * (std::abs(f1) + std::abs(f2));
    }

    const double mean = res_k * 0.5;
    double res_asc = kWgk[7] * std::abs(fc - mean);
    for (int j = 0; j < 7; ++j) res_asc += kWgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));

    Result r;
    r.value = res_k * half;
    r.abs_value = res_abs * abs_half;
    res_asc *= abs_half;
    double err = std::abs((res_k - res_g) * half);
    if (res_asc != 0.0 && err != 0.0) err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
    if (r.abs_value > kTiny / (50.0 * kEps)) err = std::max(50.0 * kEps * r.abs_value, err);
    r.error = err;
    r.panels = 1;
    return r;
}

Result integrate(const std::function<double(double)>& f, std::span<const double> breakpoints, const Options& opts)
{
    if (breakpoints.size() < 2) throw InvalidArgument("integrate: need at least two breakpoints");
    for (std::size_t k = 1; k < breakpoints.size(); ++k)
        if (!(breakpoints[k] > breakpoints[k - 1]))
            throw InvalidArgument("integrate: breakpoints must be strictly increasing");

    std::priority_queue<Panel, std::vector<Panel>, ByError> heap;
    double total_err = 0.0, total_val = 0.0, total_abs = 0.0;
    for (std::size_t k = 1; k < breakpoints.size(); ++k) {
        Panel p{breakpoints[k - 1], breakpoints[k], gauss_kronrod_15(f, breakpoints[k - 1], breakpoints[k])};
        total_err += p.r.error;
        total_val += p.r.value;
        total_abs += p.r.abs_value;
        heap.push(p);
    }

    auto done = [&] {
        const double target = std::max({opts.abs_tol, opts.rel_tol * std::abs(total_val), 50.0 * kEps * total_abs});
        return total_err <= target;
    };

    bool converged = true;
    while (!done()) {
        if (heap.size() >= opts.max_panels) {
            converged = false;
            break;
        }
        const Panel worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {  // cannot bisect further
            converged = false;
            break;
        }
        heap.pop();
        Panel left{worst.a, mid, gauss_kronrod_15(f, worst.a, mid)};
        Panel right{mid, worst.b, gauss_kronrod_15(f, mid, worst.b)};
        total_err += left.r.error + right.r.error - worst.r.error;
        total_val += left.r.value + right.r.value - worst.r.value;
        total_abs += left.r.abs_value + right.r.abs_value - worst.r.abs_value;
        heap.push(left);
        heap.push(right);
    }

    // Re-sum in position order so the result does not depend on heap history.
    std::vector<Panel> panels;
    panels.reserve(heap.size());
    while (!heap.empty()) {
        panels.push_back(heap.top());
        heap.pop();
    }
    std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });

    Result out;
    for (const auto& p : panels) {
        out.value += p.r.value;
        out.error += p.r.error;
        out.abs_value += p.r.abs_value;
    }
    out.panels = panels.size();
    out.converged = converged;
    return out;
}

} // namespace cqed::quadrature
