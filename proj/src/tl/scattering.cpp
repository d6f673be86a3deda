#include "hhq/tl/scattering.hpp"

#include <cmath>

#include "hhq/errors.hpp"

namespace hhq::tl {

namespace {
constexpr cplx I{0.0, 1.0};
}

void TLParams::validate(bool dual) const
{
    if (!(Z0 > 0.0) || !std::isfinite(Z0)) {
        throw Error(ErrorKind::parameter, "Z0 must be positive");
    }
    if (!(Cc >= 0.0) || !(Cg >= 0.0) || !std::isfinite(Cc) || !std::isfinite(Cg)) {
        throw Error(ErrorKind::parameter, "capacitances must be finite and >= 0");
    }
    if (dual && (!(Z1 > 0.0) || !std::isfinite(Z1))) {
        throw Error(ErrorKind::parameter, "Z1 must be positive");
    }
}

cplx reflection_single(double omega, double Cc, double Z0)
{
    const double x = Cc * omega * Z0;
    return (I - x) / (I + x);
}

cplx dual_line_denominator(double omega, double Cg, double Cc, double Z0, double Z1)
{
    return 1.0 - I * omega * (Cg + Cc) * Z1 - omega * Cg * Z0 * (I + omega * Cc * Z1);
}

DualScattering dual_line_scattering(double omega, double Cg, double Cc, double Z0, double Z1)
{
    const cplx den = dual_line_denominator(omega, Cg, Cc, Z0, Z1);
    const cplx num0 = 1.0 - I * omega * (Cg + Cc) * Z1 + omega * Cg * Z0 * (I + omega * Cc * Z1);
    const cplx num1 = 1.0 + I * omega * (Cg + Cc) * Z1 - omega * Cg * Z0 * (I - omega * Cc * Z1);
    const cplx s = -2.0 * I * omega * Cg * std::sqrt(Z0 * Z1);
    return {num0 / den, num1 / den, s / den};
}

} // namespace hhq::tl
