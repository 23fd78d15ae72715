#pragma once

// Data-parallel inner loops over interleaved complex<double> arrays.
//
// Every kernel has a portable scalar reference implementation and, on x86-64
// builds, an AVX2/FMA variant. The variant is chosen once at runtime from the
// CPU feature flags; setting CQED_KERNELS=scalar (or avx2) in the environment
// forces a choice. Variants agree to a few ulp, not bit-for-bit, because FMA
// and lane-wise reductions round differently.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace cqed::kernels {

using cplx = std::complex<double>;

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa) noexcept;

struct KernelTable {
    Isa isa;
    // out[k] = a[k] * b[k]
    void (*hadamard)(const cplx* a, const cplx* b, cplx* out, std::size_t n);
    // sum_k conj(a[k]) * b[k]
    cplx (*dot)(const cplx* a, const cplx* b, std::size_t n);
    // sum_k |a[k]|^2
    double (*sum_abs2)(const cplx* a, std::size_t n);
    // out[k] = rho[k] * left * right[k] * damping[k]
    void (*dephase_row)(const cplx* rho, cplx left, const cplx* right,
                        const double* damping, cplx* out, std::size_t n);
};

bool isa_supported(Isa isa) noexcept;
const KernelTable& table(Isa isa);

/// Kernel table in use for this process (best supported ISA unless the
/// CQED_KERNELS environment variable overrides it).
const KernelTable& active() noexcept;

// Convenience wrappers over active().
void hadamard(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out);
cplx dot(std::span<const cplx> a, std::span<const cplx> b);
double sum_abs2(std::span<const cplx> a);

namespace scalar {
void hadamard(const cplx* a, const cplx* b, cplx* out, std::size_t n);
cplx dot(const cplx* a, const cplx* b, std::size_t n);
double sum_abs2(const cplx* a, std::size_t n);
void dephase_row(const cplx* rho, cplx left, const cplx* right, const double* damping,
                 cplx* out, std::size_t n);
} // namespace scalar

#if defined(CQED_HAVE_AVX2_KERNELS)
namespace avx2 {
void hadamard(const cplx* a, const cplx* b, cplx* out, std::size_t n);
cplx dot(const cplx* a, const cplx* b, std::size_t n);
double sum_abs2(const cplx* a, std::size_t n);
void dephase_row(const cplx* rho, cplx left, const cplx* right, const double* damping,
                 cplx* out, std::size_t n);
} // namespace avx2
#endif

} // namespace cqed::kernels
