#pragma once

#include "hhq/constants.hpp"

namespace hhq::tl {

/// Stationary membrane voltage under I0 sin(Omega t) through the line:
/// I0 Z0 (sin Wt - Cc W Z0 cos Wt) / (1 + (Cc W Z0)^2).
double voltage_classical_source(double I0, double Omega, double Cc, double Z0, double t);

struct VacuumMoment {
    double quadrature = 0.0;   ///< adaptive quadrature of the cut-off integral, V^2
    double closed_form = 0.0;  ///< antiderivative evaluated at the cutoff, V^2
    double omega_max = 0.0;    ///< UV cutoff used, rad/s
};

/// Zero-point voltage second moment (hbar Z0/pi) int_0^wmax w / (1 + (Cc w Z0)^2) dw.
/// Diverges logarithmically, so the cutoff is mandatory; throws Error(parameter) if omega_max <= 0.
VacuumMoment vacuum_second_moment(double Cc, double Z0, double omega_max, double hbar = constants::hbar);

struct ThermalDelta {
    /// (hbar Z0/pi) int w (coth(beta hbar w/2) - 1) / (1 + (Cc w Z0)^2) dw, the full Bose-Einstein excess.
    double bose = 0.0;
    /// Same integral with coth(x/2) - 1 replaced by its large-x form 2 e^{-x}.
    double boltzmann = 0.0;
    /// 2 Z0 / (hbar pi beta^2)
    double closed_form = 0.0;
    double omega_max = 0.0;   ///< integration cutoff, rad/s
    double tail_bound = 0.0;  ///< upper bound on the neglected tail of `bose`, relative to `bose`
};

/// Thermal excess of the voltage second moment over the vacuum. Throws Error(parameter) unless beta > 0.
ThermalDelta thermal_delta(double Z0, double Cc, double beta, double hbar = constants::hbar);

/// coth(x/2) - 1 = 2 / (e^x - 1), with a series below x = 1e-6.
double bose_excess(double x) noexcept;

} // namespace hhq::tl
