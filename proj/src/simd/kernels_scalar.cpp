#include "hhq/simd/kernels.hpp"

namespace hhq::simd::scalar {

// Explicit real arithmetic: std::complex operator* carries NaN/Inf recovery branches
// (Annex G) that we neither need nor want in the reference path.

void caxpy(cplx a, const cplx* x, cplx* y, std::size_t n)
{
    const double ar = a.real();
    const double ai = a.imag();
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real();
        const double xi = x[i].imag();
        y[i] = {y[i].real() + (ar * xr - ai * xi), y[i].imag() + (ar * xi + ai * xr)};
    }
}

void cmul_acc(const cplx* x, const cplx* w, cplx* y, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real();
        const double xi = x[i].imag();
        const double wr = w[i].real();
        const double wi = w[i].imag();
        y[i] = {y[i].real() + (xr * wr - xi * wi), y[i].imag() + (xr * wi + xi * wr)};
    }
}

cplx cdot(const cplx* x, const cplx* y, std::size_t n)
{
    double re = 0.0;
    double im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real();
        const double xi = x[i].imag();
        const double yr = y[i].real();
        const double yi = y[i].imag();
        re += xr * yr - xi * yi;
        im += xr * yi + xi * yr;
    }
    return {re, im};
}

void cscale(cplx a, cplx* y, std::size_t n)
{
    const double ar = a.real();
    const double ai = a.imag();
    for (std::size_t i = 0; i < n; ++i) {
        const double yr = y[i].real();
        const double yi = y[i].imag();
        y[i] = {ar * yr - ai * yi, ar * yi + ai * yr};
    }
}

} // namespace hhq::simd::scalar
