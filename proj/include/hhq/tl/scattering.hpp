#pragma once

#include <complex>

namespace hhq::tl {

using cplx = std::complex<double>;

/// Line and membrane constants, SI. Z1 is only used by the two-line geometry.
struct TLParams {
    double Z0 = 0.0;  ///< line impedance sqrt(L0/C0), Ohm
    double Cc = 0.0;  ///< membrane capacitance, F
    double Cg = 0.0;  ///< coupling capacitance, F
    double V0 = 0.0;  ///< resting potential; a DC offset only, never part of the traces
    double Z1 = 0.0;  ///< second line, Ohm

    /// Throws Error(parameter) unless Z0 > 0, Cc, Cg >= 0 and (for `dual`) Z1 > 0.
    void validate(bool dual = false) const;
};

/// (i - Cc w Z0) / (i + Cc w Z0); unit modulus.
cplx reflection_single(double omega, double Cc, double Z0);

struct DualScattering {
    cplx R0;  ///< source (left) line
    cplx R1;  ///< membrane (right) line
    cplx s;   ///< transmission, the same in both directions
};

/// Scattering between a source line (Z0) and a membrane line (Z1) joined through Cg, with Cc to ground.
DualScattering dual_line_scattering(double omega, double Cg, double Cc, double Z0, double Z1);

/// Common denominator 1 - i w (Cg + Cc) Z1 - w Cg Z0 (i + w Cc Z1).
cplx dual_line_denominator(double omega, double Cg, double Cc, double Z0, double Z1);

} // namespace hhq::tl
