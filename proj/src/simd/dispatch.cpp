#include <atomic>
#include <cstdlib>
#include <cstring>

#include "hhq/errors.hpp"
#include "hhq/simd/kernels.hpp"

namespace hhq::simd {

namespace {

bool cpu_has_avx2() noexcept
{
#if defined(HHQ_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Backend detect() noexcept
{
    const char* env = std::getenv("HHQ_SIMD");
    if (env != nullptr && std::strcmp(env, "scalar") == 0) {
        return Backend::scalar;
    }
    return cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
}

std::atomic<Backend>& current()
{
    static std::atomic<Backend> backend{detect()};
    return backend;
}

void check_sizes(std::size_t a, std::size_t b)
{
    if (a != b) {
        throw Error(ErrorKind::parameter, "kernel operand lengths differ");
    }
}

} // namespace

std::string_view to_string(Backend backend)
{
    return backend == Backend::avx2 ? "avx2" : "scalar";
}

Backend active_backend() noexcept { return current().load(std::memory_order_relaxed); }

bool backend_available(Backend backend) noexcept
{
    return backend == Backend::scalar || cpu_has_avx2();
}

void set_backend(Backend backend)
{
    if (!backend_available(backend)) {
        throw Error(ErrorKind::parameter, std::string("SIMD backend unavailable: ") + std::string(to_string(backend)));
    }
    current().store(backend, std::memory_order_relaxed);
}

void caxpy(cplx a, std::span<const cplx> x, std::span<cplx> y)
{
    check_sizes(x.size(), y.size());
#if defined(HHQ_HAVE_AVX2)
    if (active_backend() == Backend::avx2) {
        return avx2::caxpy(a, x.data(), y.data(), x.size());
    }
#endif
    scalar::caxpy(a, x.data(), y.data(), x.size());
}

void cmul_acc(std::span<const cplx> x, std::span<const cplx> w, std::span<cplx> y)
{
    check_sizes(x.size(), y.size());
    check_sizes(w.size(), y.size());
#if defined(HHQ_HAVE_AVX2)
    if (active_backend() == Backend::avx2) {
        return avx2::cmul_acc(x.data(), w.data(), y.data(), x.size());
    }
#endif
    scalar::cmul_acc(x.data(), w.data(), y.data(), x.size());
}

cplx cdot(std::span<const cplx> x, std::span<const cplx> y)
{
    check_sizes(x.size(), y.size());
#if defined(HHQ_HAVE_AVX2)
    if (active_backend() == Backend::avx2) {
        return avx2::cdot(x.data(), y.data(), x.size());
    }
#endif
    return scalar::cdot(x.data(), y.data(), x.size());
}

void cscale(cplx a, std::span<cplx> y)
{
#if defined(HHQ_HAVE_AVX2)
    if (active_backend() == Backend::avx2) {
        return avx2::cscale(a, y.data(), y.size());
    }
#endif
    scalar::cscale(a, y.data(), y.size());
}

} // namespace hhq::simd
