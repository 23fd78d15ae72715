#include "cqed/kernels.hpp"

namespace cqed::kernels::scalar {

// Complex products are spelled out on real/imaginary parts: std::complex
// multiplication goes through the C99 Annex G NaN-recovery path otherwise.

void hadamard(const cplx* a, const cplx* b, cplx* out, std::size_t n)
{
    for (std::size_t k = 0; k < n; ++k) {
        const double ar = a[k].real(), ai = a[k].imag();
        const double br = b[k].real(), bi = b[k].imag();
        out[k] = cplx(ar * br - ai * bi, ar * bi + ai * br);
    }
}

cplx dot(const cplx* a, const cplx* b, std::size_t n)
{
    double re = 0.0, im = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double ar = a[k].real(), ai = a[k].imag();
        const double br = b[k].real(), bi = b[k].imag();
        re += ar * br + ai * bi;
        im += ar * bi - ai * br;
    }
    return {re, im};
}

double sum_abs2(const cplx* a, std::size_t n)
{
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) s += a[k].real() * a[k].real() + a[k].imag() * a[k].imag();
    return s;
}

void dephase_row(const cplx* rho, cplx left, const cplx* right, const double* damping,
                 cplx* out, std::size_t n)
{
    const double lr = left.real(), li = left.imag();
    for (std::size_t k = 0; k < n; ++k) {
        // (rho * left) * right * damping
        const double pr = rho[k].real() * lr - rho[k].imag() * li;
        const double pi = rho[k].real() * li + rho[k].imag() * lr;
        const double rr = right[k].real(), ri = right[k].imag();
        out[k] = cplx((pr * rr - pi * ri) * damping[k], (pr * ri + pi * rr) * damping[k]);
    }
}

} // namespace cqed::kernels::scalar
