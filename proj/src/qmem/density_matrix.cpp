#include "hhq/qmem/density_matrix.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <utility>
#include <vector>

#include "hhq/errors.hpp"

namespace hhq::qmem {

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m))
{
    if (m_.dim() == 0) {
        throw Error(ErrorKind::parameter, "density matrix must be non-empty");
    }
}

DensityMatrix DensityMatrix::from_pure(std::span<const cplx> psi)
{
    double norm2 = 0.0;
    for (const cplx& c : psi) {
        norm2 += std::norm(c);
    }
    if (psi.empty() || !(norm2 > 0.0) || !std::isfinite(norm2)) {
        throw Error(ErrorKind::parameter, "state vector must be finite and non-zero");
    }
    const std::size_t d = psi.size();
    ComplexMatrix m(d);
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            m(r, c) = psi[r] * std::conj(psi[c]) / norm2;
        }
    }
    return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::fock(std::size_t dim, std::size_t level)
{
    if (level >= dim) {
        throw Error(ErrorKind::parameter, "Fock level outside the truncated space");
    }
    ComplexMatrix m(dim);
    m(level, level) = 1.0;
    return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::coherent(std::size_t dim, cplx alpha)
{
    if (dim == 0) {
        throw Error(ErrorKind::parameter, "density matrix must be non-empty");
    }
    std::vector<cplx> psi(dim);
    psi[0] = 1.0;
    for (std::size_t k = 1; k < dim; ++k) {
        psi[k] = psi[k - 1] * alpha / std::sqrt(static_cast<double>(k));
    }
    return from_pure(psi);
}

double DensityMatrix::purity() const
{
    // tr(rho^2) = sum |rho_ij|^2 for Hermitian rho; use the general form to stay honest.
    return trace_of_product(m_, m_).real();
}

double DensityMatrix::expectation(const ComplexMatrix& a) const { return trace_of_product(m_, a).real(); }

double DensityMatrix::expectation(const Tridiagonal& a) const
{
    const std::size_t d = dim();
    cplx sum = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        sum += m_(i, i) * a.diag[i];
        if (i + 1 < d) {
            sum += m_(i, i + 1) * a.lower[i] + m_(i + 1, i) * a.upper[i];
        }
    }
    return sum.real();
}

double DensityMatrix::hermiticity_error() const
{
    double err = 0.0;
    for (std::size_t r = 0; r < dim(); ++r) {
        for (std::size_t c = r; c < dim(); ++c) {
            err = std::max(err, std::abs(m_(r, c) - std::conj(m_(c, r))));
        }
    }
    return err;
}

double DensityMatrix::min_eigenvalue() const
{
    const auto d = static_cast<Eigen::Index>(dim());
    Eigen::MatrixXcd a(d, d);
    for (Eigen::Index r = 0; r < d; ++r) {
        for (Eigen::Index c = 0; c < d; ++c) {
            a(r, c) = m_(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
        }
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

void DensityMatrix::symmetrize()
{
    const std::size_t d = dim();
    for (std::size_t r = 0; r < d; ++r) {
        m_(r, r) = m_(r, r).real();
        for (std::size_t c = r + 1; c < d; ++c) {
            const cplx avg = 0.5 * (m_(r, c) + std::conj(m_(c, r)));
            m_(r, c) = avg;
            m_(c, r) = std::conj(avg);
        }
    }
}

double DensityMatrix::renormalize()
{
    const double tr = trace();
    if (!(tr > 0.0) || !std::isfinite(tr)) {
        throw Error(ErrorKind::instability, "density matrix trace is not positive");
    }
    m_ *= 1.0 / tr;
    return tr;
}

} // namespace hhq::qmem
