#include "cqed/kernels.hpp"

#include <immintrin.h>

// Two complex<double> per __m256d, laid out [re0 im0 re1 im1].

namespace cqed::kernels::avx2 {
namespace {

inline __m256d load2(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(cplx* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

inline __m256d cmul(__m256d a, __m256d b)
{
    const __m256d br = _mm256_movedup_pd(b);          // [b0r b0r b1r b1r]
    const __m256d bi = _mm256_permute_pd(b, 0xF);     // [b0i b0i b1i b1i]
    const __m256d as = _mm256_permute_pd(a, 0x5);     // [a0i a0r a1i a1r]
    return _mm256_fmaddsub_pd(a, br, _mm256_mul_pd(as, bi));
}

inline double hsum(__m256d v)
{
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

} // namespace

void hadamard(const cplx* a, const cplx* b, cplx* out, std::size_t n)
{
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2) store2(out + k, cmul(load2(a + k), load2(b + k)));
    if (k < n) scalar::hadamard(a + k, b + k, out + k, n - k);
}

cplx dot(const cplx* a, const cplx* b, std::size_t n)
{
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2) {
        const __m256d va = load2(a + k);
        const __m256d vb = load2(b + k);
        acc_re = _mm256_fmadd_pd(va, vb, acc_re);                              // [ar*br, ai*bi]
        acc_im = _mm256_fmadd_pd(va, _mm256_permute_pd(vb, 0x5), acc_im);      // [ar*bi, ai*br]
    }
    alignas(32) double im_lanes[4];
    _mm256_store_pd(im_lanes, acc_im);
    cplx s(hsum(acc_re), (im_lanes[0] - im_lanes[1]) + (im_lanes[2] - im_lanes[3]));
    if (k < n) s += scalar::dot(a + k, b + k, n - k);
    return s;
}

double sum_abs2(const cplx* a, std::size_t n)
{
    __m256d acc = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2) {
        const __m256d v = load2(a + k);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    double s = hsum(acc);
    if (k < n) s += scalar::sum_abs2(a + k, n - k);
    return s;
}

void dephase_row(const cplx* rho, cplx left, const cplx* right, const double* damping,
                 cplx* out, std::size_t n)
{
    const __m256d vl = _mm256_setr_pd(left.real(), left.imag(), left.real(), left.imag());
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2) {
        const __m128d d2 = _mm_loadu_pd(damping + k);
        const __m256d d = _mm256_permute4x64_pd(_mm256_castpd128_pd256(d2), 0x50);
        const __m256d p = cmul(load2(rho + k), vl);
        store2(out + k, _mm256_mul_pd(cmul(p, load2(right + k)), d));
    }
    if (k < n) scalar::dephase_row(rho + k, left, right + k, damping + k, out + k, n - k);
}

} // namespace cqed::kernels::avx2
