#pragma once

#include <cstddef>
#include <span>

#include "hhq/qmem/matrix.hpp"

namespace hhq::qmem {

/// Hermitian, unit-trace state on a truncated Fock space.
class DensityMatrix {
public:
    explicit DensityMatrix(ComplexMatrix m);

    /// |psi><psi| with psi normalised first.
    static DensityMatrix from_pure(std::span<const cplx> psi);
    static DensityMatrix fock(std::size_t dim, std::size_t level);
    /// Coherent state |alpha>, truncated and renormalised.
    static DensityMatrix coherent(std::size_t dim, cplx alpha);

    [[nodiscard]] std::size_t dim() const noexcept { return m_.dim(); }
    [[nodiscard]] const ComplexMatrix& matrix() const noexcept { return m_; }
    [[nodiscard]] ComplexMatrix& matrix() noexcept { return m_; }

    [[nodiscard]] double trace() const noexcept { return m_.trace().real(); }
    [[nodiscard]] double purity() const;
    /// Re tr(rho A).
    [[nodiscard]] double expectation(const ComplexMatrix& a) const;
    [[nodiscard]] double expectation(const Tridiagonal& a) const;
    /// max |rho - rho^dag|
    [[nodiscard]] double hermiticity_error() const;
    /// Smallest eigenvalue of the Hermitian part.
    [[nodiscard]] double min_eigenvalue() const;

    void symmetrize();
    /// Divides by the real trace; returns the trace found. Throws Error(instability) if it is not positive.
    double renormalize();

private:
    ComplexMatrix m_;
};

} // namespace hhq::qmem
