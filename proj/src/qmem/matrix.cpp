#include "hhq/qmem/matrix.hpp"

#include <algorithm>
#include <cmath>

#include "hhq/errors.hpp"
#include "hhq/simd/kernels.hpp"

namespace hhq::qmem {

namespace {

void require_same_dim(std::size_t a, std::size_t b)
{
    if (a != b) {
        throw Error(ErrorKind::parameter, "matrix dimensions differ");
    }
}

} // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

ComplexMatrix ComplexMatrix::identity(std::size_t dim)
{
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

cplx ComplexMatrix::trace() const noexcept
{
    cplx sum = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
        sum += (*this)(i, i);
    }
    return sum;
}

ComplexMatrix ComplexMatrix::adjoint() const
{
    ComplexMatrix out(dim_);
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t c = 0; c < dim_; ++c) {
            out(c, r) = std::conj((*this)(r, c));
        }
    }
    return out;
}

double ComplexMatrix::max_abs() const noexcept
{
    double m = 0.0;
    for (const cplx& z : data_) {
        m = std::max(m, std::abs(z));
    }
    return m;
}

void ComplexMatrix::set_zero() noexcept { std::fill(data_.begin(), data_.end(), cplx{}); }

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other)
{
    add_scaled(1.0, other);
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other)
{
    add_scaled(-1.0, other);
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s)
{
    simd::cscale(s, data_);
    return *this;
}

void ComplexMatrix::add_scaled(cplx s, const ComplexMatrix& other)
{
    require_same_dim(dim_, other.dim_);
    simd::caxpy(s, other.data_, data_);
}

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b)
{
    require_same_dim(a.dim(), b.dim());
    const std::size_t d = a.dim();
    ComplexMatrix out(d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t k = 0; k < d; ++k) {
            const cplx aik = a(i, k);
            if (aik != cplx{}) {
                simd::caxpy(aik, b.row(k), out.row(i));
            }
        }
    }
    return out;
}

ComplexMatrix multiply_reference(const ComplexMatrix& a, const ComplexMatrix& b)
{
    require_same_dim(a.dim(), b.dim());
    const std::size_t d = a.dim();
    ComplexMatrix out(d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            cplx sum = 0.0;
            for (std::size_t k = 0; k < d; ++k) {
                sum += a(i, k) * b(k, j);
            }
            out(i, j) = sum;
        }
    }
    return out;
}

cplx trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b)
{
    require_same_dim(a.dim(), b.dim());
    cplx sum = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t k = 0; k < a.dim(); ++k) {
            sum += a(i, k) * b(k, i);
        }
    }
    return sum;
}

Tridiagonal Tridiagonal::from_dense(const ComplexMatrix& m)
{
    const std::size_t d = m.dim();
    Tridiagonal t;
    t.diag.resize(d);
    t.lower.resize(d > 0 ? d - 1 : 0);
    t.upper.resize(d > 0 ? d - 1 : 0);
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            const cplx z = m(r, c);
            if (r == c) {
                t.diag[r] = z;
            } else if (r == c + 1) {
                t.lower[c] = z;
            } else if (c == r + 1) {
                t.upper[r] = z;
            } else if (z != cplx{}) {
                throw Error(ErrorKind::parameter, "matrix is not tridiagonal");
            }
        }
    }
    return t;
}

ComplexMatrix Tridiagonal::to_dense() const
{
    const std::size_t d = dim();
    ComplexMatrix m(d);
    for (std::size_t i = 0; i < d; ++i) {
        m(i, i) = diag[i];
        if (i + 1 < d) {
            m(i + 1, i) = lower[i];
            m(i, i + 1) = upper[i];
        }
    }
    return m;
}

void left_multiply(const Tridiagonal& t, const ComplexMatrix& x, ComplexMatrix& out)
{
    const std::size_t d = x.dim();
    require_same_dim(t.dim(), d);
    if (out.dim() != d) {
        out = ComplexMatrix(d);
    } else {
        out.set_zero();
    }
    for (std::size_t i = 0; i < d; ++i) {
        auto dst = out.row(i);
        simd::caxpy(t.diag[i], x.row(i), dst);
        if (i > 0) {
            simd::caxpy(t.lower[i - 1], x.row(i - 1), dst);
        }
        if (i + 1 < d) {
            simd::caxpy(t.upper[i], x.row(i + 1), dst);
        }
    }
}

void right_multiply(const ComplexMatrix& x, const Tridiagonal& t, ComplexMatrix& out)
{
    const std::size_t d = x.dim();
    require_same_dim(t.dim(), d);
    if (out.dim() != d) {
        out = ComplexMatrix(d);
    } else {
        out.set_zero();
    }
    if (d == 0) {
        return;
    }
    const std::span<const cplx> diag(t.diag);
    const std::span<const cplx> upper(t.upper);
    const std::span<const cplx> lower(t.lower);
    for (std::size_t i = 0; i < d; ++i) {
        const auto src = x.row(i);
        auto dst = out.row(i);
        // (X T)(i, j) = X(i, j) T(j, j) + X(i, j-1) T(j-1, j) + X(i, j+1) T(j+1, j)
        simd::cmul_acc(src, diag, dst);
        simd::cmul_acc(src.first(d - 1), upper, dst.subspan(1));
        simd::cmul_acc(src.subspan(1), lower, dst.first(d - 1));
    }
}

void commutator(const Tridiagonal& t, const ComplexMatrix& x, ComplexMatrix& out, ComplexMatrix& scratch)
{
    left_multiply(t, x, out);
    right_multiply(x, t, scratch);
    out -= scratch;
}

void anticommutator(const Tridiagonal& t, const ComplexMatrix& x, ComplexMatrix& out, ComplexMatrix& scratch)
{
    left_multiply(t, x, out);
    right_multiply(x, t, scratch);
    out += scratch;
}

} // namespace hhq::qmem
