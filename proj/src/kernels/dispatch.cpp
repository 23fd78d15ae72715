#include "cqed/kernels.hpp"

#include "cqed/errors.hpp"

#include <cstdlib>
#include <string>

namespace cqed::kernels {
namespace {

constexpr KernelTable kScalar{Isa::Scalar, &scalar::hadamard, &scalar::dot, &scalar::sum_abs2,
                              &scalar::dephase_row};

#if defined(CQED_HAVE_AVX2_KERNELS)
constexpr KernelTable kAvx2{Isa::Avx2, &avx2::hadamard, &avx2::dot, &avx2::sum_abs2,
                            &avx2::dephase_row};
#endif

const KernelTable& select()
{
    Isa isa = isa_supported(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
    if (const char* env = std::getenv("CQED_KERNELS")) {
        const std::string v(env);
        if (v == "scalar") isa = Isa::Scalar;
        else if (v == "avx2" && isa_supported(Isa::Avx2)) isa = Isa::Avx2;
    }
    return table(isa);
}

} // namespace

std::string_view isa_name(Isa isa) noexcept
{
    switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    }
    return "unknown";
}

bool isa_supported(Isa isa) noexcept
{
    switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if defined(CQED_HAVE_AVX2_KERNELS)
        return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
        return false;
#endif
    }
    return false;
}

const KernelTable& table(Isa isa)
{
    if (!isa_supported(isa))
        throw InvalidArgument("kernel ISA '" + std::string(isa_name(isa)) + "' not supported on this CPU/build");
#if defined(CQED_HAVE_AVX2_KERNELS)
    if (isa == Isa::Avx2) return kAvx2;
#endif
    return kScalar;
}

const KernelTable& active() noexcept
{
    static const KernelTable& t = select();
    return t;
}

void hadamard(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out)
{
    if (a.size() != b.size() || a.size() != out.size())
        throw InvalidArgument("hadamard: length mismatch");
    active().hadamard(a.data(), b.data(), out.data(), a.size());
}

cplx dot(std::span<const cplx> a, std::span<const cplx> b)
{
    if (a.size() != b.size()) throw InvalidArgument("dot: length mismatch");
    return active().dot(a.data(), b.data(), a.size());
}

double sum_abs2(std::span<const cplx> a)
{
    return active().sum_abs2(a.data(), a.size());
}

} // namespace cqed::kernels
