#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace hhq::qmem {

using cplx = std::complex<double>;

/// Dense square complex matrix, row-major.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t dim);

    static ComplexMatrix identity(std::size_t dim);

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] cplx& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * dim_ + c]; }
    [[nodiscard]] const cplx& operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * dim_ + c]; }

    [[nodiscard]] std::span<cplx> row(std::size_t r) noexcept { return {data_.data() + r * dim_, dim_}; }
    [[nodiscard]] std::span<const cplx> row(std::size_t r) const noexcept { return {data_.data() + r * dim_, dim_}; }
    [[nodiscard]] std::span<cplx> data() noexcept { return data_; }
    [[nodiscard]] std::span<const cplx> data() const noexcept { return data_; }

    [[nodiscard]] cplx trace() const noexcept;
    [[nodiscard]] ComplexMatrix adjoint() const;
    /// max |a_ij|
    [[nodiscard]] double max_abs() const noexcept;

    void set_zero() noexcept;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(cplx s);
    /// this += s * other
    void add_scaled(cplx s, const ComplexMatrix& other);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

private:
    std::size_t dim_ = 0;
    std::vector<cplx> data_;
};

/// Dense product (kernel-backed row updates).
ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);

/// Reference triple loop, kept independent of the kernel layer for tests.
ComplexMatrix multiply_reference(const ComplexMatrix& a, const ComplexMatrix& b);

/// tr(A B) without forming the product.
cplx trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// Tridiagonal operator: lower[i] = T(i+1, i), diag[i] = T(i, i), upper[i] = T(i, i+1).
struct Tridiagonal {
    std::vector<cplx> lower;
    std::vector<cplx> diag;
    std::vector<cplx> upper;

    [[nodiscard]] std::size_t dim() const noexcept { return diag.size(); }

    /// Throws Error(parameter) if `m` has entries outside the three central bands.
    static Tridiagonal from_dense(const ComplexMatrix& m);
    [[nodiscard]] ComplexMatrix to_dense() const;
};

/// out = T X
void left_multiply(const Tridiagonal& t, const ComplexMatrix& x, ComplexMatrix& out);
/// out = X T
void right_multiply(const ComplexMatrix& x, const Tridiagonal& t, ComplexMatrix& out);
/// out = T X - X T
void commutator(const Tridiagonal& t, const ComplexMatrix& x, ComplexMatrix& out, ComplexMatrix& scratch);
/// out = T X + X T
void anticommutator(const Tridiagonal& t, const ComplexMatrix& x, ComplexMatrix& out, ComplexMatrix& scratch);

} // namespace hhq::qmem
