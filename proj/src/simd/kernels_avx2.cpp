#include "hhq/simd/kernels.hpp"

#include <immintrin.h>

// Two interleaved complex doubles per __m256d: [re0, im0, re1, im1].
// Complex product uses the fmaddsub idiom: even lanes subtract, odd lanes add.

namespace hhq::simd::avx2 {

namespace {

inline __m256d load(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store(cplx* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

// (x * w) for two packed complex pairs.
inline __m256d cmul(__m256d x, __m256d w)
{
    const __m256d w_re = _mm256_movedup_pd(w);        // [wr0, wr0, wr1, wr1]
    const __m256d w_im = _mm256_permute_pd(w, 0xF);   // [wi0, wi0, wi1, wi1]
    const __m256d x_sw = _mm256_permute_pd(x, 0x5);   // [xi0, xr0, xi1, xr1]
    return _mm256_fmaddsub_pd(x, w_re, _mm256_mul_pd(x_sw, w_im));
}

} // namespace

void caxpy(cplx a, const cplx* x, cplx* y, std::size_t n)
{
    const __m256d a_re = _mm256_set1_pd(a.real());
    const __m256d a_im = _mm256_set1_pd(a.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = load(x + i);
        const __m256d x_sw = _mm256_permute_pd(xv, 0x5);
        const __m256d prod = _mm256_fmaddsub_pd(xv, a_re, _mm256_mul_pd(x_sw, a_im));
        store(y + i, _mm256_add_pd(load(y + i), prod));
    }
    if (i < n) {
        scalar::caxpy(a, x + i, y + i, n - i);
    }
}

void cmul_acc(const cplx* x, const cplx* w, cplx* y, std::size_t n)
{
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        store(y + i, _mm256_add_pd(load(y + i), cmul(load(x + i), load(w + i))));
    }
    if (i < n) {
        scalar::cmul_acc(x + i, w + i, y + i, n - i);
    }
}

cplx cdot(const cplx* x, const cplx* y, std::size_t n)
{
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc0 = _mm256_add_pd(acc0, cmul(load(x + i), load(y + i)));
        acc1 = _mm256_add_pd(acc1, cmul(load(x + i + 2), load(y + i + 2)));
    }
    for (; i + 2 <= n; i += 2) {
        acc0 = _mm256_add_pd(acc0, cmul(load(x + i), load(y + i)));
    }
    acc0 = _mm256_add_pd(acc0, acc1);
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc0);
    cplx sum{lanes[0] + lanes[2], lanes[1] + lanes[3]};
    if (i < n) {
        sum += scalar::cdot(x + i, y + i, n - i);
    }
    return sum;
}

void cscale(cplx a, cplx* y, std::size_t n)
{
    const __m256d a_re = _mm256_set1_pd(a.real());
    const __m256d a_im = _mm256_set1_pd(a.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d yv = load(y + i);
        const __m256d y_sw = _mm256_permute_pd(yv, 0x5);
        store(y + i, _mm256_fmaddsub_pd(yv, a_re, _mm256_mul_pd(y_sw, a_im)));
    }
    if (i < n) {
        scalar::cscale(a, y + i, n - i);
    }
}

} // namespace hhq::simd::avx2
