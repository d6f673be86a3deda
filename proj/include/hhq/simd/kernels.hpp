#pragma once

// Complex double-precision vector kernels behind the density-matrix and spectral inner loops.
//
// Every kernel has a scalar reference implementation and, on x86-64 builds, an AVX2/FMA variant.
// The variant is chosen once per process from CPUID; `HHQ_SIMD=scalar` forces the reference path.
// Variants agree to a few ulps (FMA contraction and summation order differ), so runs are
// bit-reproducible for a fixed backend only.

#include <complex>
#include <span>
#include <string_view>

namespace hhq::simd {

using cplx = std::complex<double>;

enum class Backend { scalar, avx2 };

std::string_view to_string(Backend backend);

/// The backend the dispatching entry points use.
Backend active_backend() noexcept;

/// True when the CPU and the build both support `backend`.
bool backend_available(Backend backend) noexcept;

/// Overrides runtime selection. Throws Error(parameter) if the backend is unavailable.
void set_backend(Backend backend);

/// y[i] += a * x[i]
void caxpy(cplx a, std::span<const cplx> x, std::span<cplx> y);

/// y[i] += x[i] * w[i]
void cmul_acc(std::span<const cplx> x, std::span<const cplx> w, std::span<cplx> y);

/// sum_i x[i] * y[i]  (no conjugation)
cplx cdot(std::span<const cplx> x, std::span<const cplx> y);

/// y[i] = a * y[i]
void cscale(cplx a, std::span<cplx> y);

namespace scalar {
void caxpy(cplx a, const cplx* x, cplx* y, std::size_t n);
void cmul_acc(const cplx* x, const cplx* w, cplx* y, std::size_t n);
cplx cdot(const cplx* x, const cplx* y, std::size_t n);
void cscale(cplx a, cplx* y, std::size_t n);
} // namespace scalar

#if defined(HHQ_HAVE_AVX2)
namespace avx2 {
void caxpy(cplx a, const cplx* x, cplx* y, std::size_t n);
void cmul_acc(const cplx* x, const cplx* w, cplx* y, std::size_t n);
cplx cdot(const cplx* x, const cplx* y, std::size_t n);
void cscale(cplx a, cplx* y, std::size_t n);
} // namespace avx2
#endif

} // namespace hhq::simd
