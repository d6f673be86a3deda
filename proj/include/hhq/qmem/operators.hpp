#pragma once

#include <cstddef>

#include "hhq/constants.hpp"
#include "hhq/qmem/matrix.hpp"

namespace hhq::qmem {

/// LC oscillator operators in the Fock basis, truncated to `dim` levels.
struct OscillatorOps {
    double C = 0.0;
    double L = 0.0;
    double hbar = 0.0;
    double omega = 0.0;      ///< 1/sqrt(LC)
    double impedance = 0.0;  ///< sqrt(L/C)

    ComplexMatrix q;    ///< i sqrt(hbar/2Z) (a^dag - a)
    ComplexMatrix phi;  ///< sqrt(hbar Z/2) (a + a^dag)
    ComplexMatrix H;    ///< hbar omega (N + 1/2), exact spectrum

    Tridiagonal q_band;
    Tridiagonal phi_band;
    Tridiagonal H_band;

    [[nodiscard]] std::size_t dim() const noexcept { return H.dim(); }
};

/// Throws Error(parameter) for dim < 2 or non-positive C, L, hbar.
OscillatorOps build_operators(std::size_t dim, double C, double L, double hbar = constants::hbar);

} // namespace hhq::qmem
