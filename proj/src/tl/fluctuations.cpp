#include "hhq/tl/fluctuations.hpp"

#include <cmath>

#include "hhq/errors.hpp"
#include "hhq/quadrature.hpp"

namespace hhq::tl {

namespace {

// Upper end of the dimensionless integration range x = beta hbar w. The integrand is bounded
// by 2 x e^{-x}, whose tail beyond 50 is ~1e-20 of the total.
constexpr double x_cutoff = 50.0;

} // namespace

double voltage_classical_source(double I0, double Omega, double Cc, double Z0, double t)
{
    const double x = Cc * Omega * Z0;
    return I0 * Z0 * (std::sin(Omega * t) - x * std::cos(Omega * t)) / (1.0 + x * x);
}

VacuumMoment vacuum_second_moment(double Cc, double Z0, double omega_max, double hbar)
{
    if (!(omega_max > 0.0) || !std::isfinite(omega_max)) {
        throw Error(ErrorKind::parameter, "vacuum second moment needs a finite cutoff omega_max > 0");
    }
    if (!(Z0 > 0.0) || !(Cc >= 0.0)) {
        throw Error(ErrorKind::parameter, "need Z0 > 0 and Cc >= 0");
    }
    const double a = Cc * Z0;
    const double prefactor = hbar * Z0 / constants::pi;

    // Integrate in u = w / wmax so the quadrature sees an O(1) range.
    const double b = a * omega_max;
    quad::Options opts;
    opts.rel_tol = 1e-12;
    const auto r = quad::integrate([b](double u) { return u / (1.0 + b * b * u * u); }, 0.0, 1.0, opts);

    VacuumMoment out;
    out.omega_max = omega_max;
    out.quadrature = prefactor * omega_max * omega_max * r.value;
    // (hbar / (2 pi Cc^2 Z0)) ln(1 + b^2), written to survive Cc -> 0.
    const double b2 = b * b;
    const double log_ratio = b2 > 0.0 ? std::log1p(b2) / b2 : 1.0;
    out.closed_form = 0.5 * prefactor * omega_max * omega_max * log_ratio;
    return out;
}

double bose_excess(double x) noexcept
{
    if (x < 1e-6) {
        return 2.0 / x - 1.0 + x / 6.0;
    }
    return 2.0 / std::expm1(x);
}

ThermalDelta thermal_delta(double Z0, double Cc, double beta, double hbar)
{
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw Error(ErrorKind::parameter, "thermal_delta needs beta > 0");
    }
    if (!(Z0 > 0.0) || !(Cc >= 0.0)) {
        throw Error(ErrorKind::parameter, "need Z0 > 0 and Cc >= 0");
    }
    const double w_th = 1.0 / (beta * hbar);  // thermal frequency scale
    const double c = Cc * Z0 * w_th;           // Lorentzian width in x units
    const double scale = hbar * Z0 / constants::pi * w_th * w_th;

    quad::Options opts;
    opts.rel_tol = 1e-10;
    const auto bose = quad::integrate(
        [c](double x) { return x * bose_excess(x) / (1.0 + c * c * x * x); }, 0.0, x_cutoff, opts);
    const auto boltz = quad::integrate(
        [c](double x) { return x * 2.0 * std::exp(-x) / (1.0 + c * c * x * x); }, 0.0, x_cutoff, opts);

    ThermalDelta out;
    out.bose = scale * bose.value;
    out.boltzmann = scale * boltz.value;
    out.closed_form = 2.0 * Z0 / (hbar * constants::pi * beta * beta);
    out.omega_max = x_cutoff * w_th;
    // int_X^inf x * 2/(e^x - 1) dx <= 2 (X + 1) e^{-X} / (1 - e^{-X}); the Lorentzian factor is <= 1.
    const double tail = 2.0 * (x_cutoff + 1.0) * std::exp(-x_cutoff) / (-std::expm1(-x_cutoff));
    out.tail_bound = bose.value > 0.0 ? tail / bose.value : 0.0;
    return out;
}

} // namespace hhq::tl
