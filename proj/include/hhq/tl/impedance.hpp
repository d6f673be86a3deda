#pragma once

#include <cstddef>

#include "hhq/drive.hpp"
#include "hhq/hh/classical.hpp"
#include "hhq/hh/rates.hpp"
#include "hhq/time_series.hpp"
#include "hhq/tl/scattering.hpp"

namespace hhq::tl {

/// Memristive line impedance tied to the potassium gate: Z = Zmin n^-4.
struct ImpedanceState {
    double Z = 0.0;
    double Zmin = 0.0;
    double n = 0.0;

    static ImpedanceState from_gate(double n, double Zmin);
    static ImpedanceState from_impedance(double Z, double Zmin);

    /// Throws Error(parameter) unless Zmin > 0, n in (0, 1] and Z = Zmin n^-4 to 1e-9.
    void validate() const;
};

enum class ImpedancePath {
    impedance,  ///< integrate dZ/dt directly, recover n
    gate,       ///< integrate dn/dt, recover Z
};

/// dZ/dt = -4 Zmin (Z/Zmin)^{5/4} alpha + 4 Z (alpha + beta)
double impedance_derivative(double Z, double Zmin, double alpha, double beta) noexcept;

/// One step with alpha, beta held fixed. `t` only labels errors.
/// Throws IntegrationError when n underflows (Z overflows) or the state turns non-finite.
ImpedanceState impedance_update_step(const ImpedanceState& state, double alpha, double beta, double dt,
                                     ImpedancePath path = ImpedancePath::impedance,
                                     hh::Scheme scheme = hh::Scheme::rk4, double t = 0.0);

/// Same, with alpha = alpha_n(V), beta = beta_n(V).
ImpedanceState impedance_update_step(const ImpedanceState& state, double V, double dt,
                                     const hh::RateFunctions& rates, ImpedancePath path = ImpedancePath::impedance,
                                     hh::Scheme scheme = hh::Scheme::rk4, double t = 0.0);

struct QuantizedSettings {
    hh::StepSettings step;
    ImpedancePath path = ImpedancePath::impedance;
    /// The impedance seen by the voltage is refreshed every `refresh_stride` steps.
    std::size_t refresh_stride = 1;
};

/// Adiabatic loop: V from the stationary line response with Z frozen, then Z advances one step
/// with that V. `tl.Z0` is not used (the impedance comes from `init`), and V0 is dropped.
/// Channels: t, V (V), Z (Ohm), g (S), n, I (A), Imem (A) = g V.
TimeSeries simulate_quantized_hh(const TLParams& tl, const Drive& drive, const ImpedanceState& init,
                                 hh::TimeSpan span, const QuantizedSettings& settings,
                                 const hh::RateFunctions& rates = hh::RateFunctions::hodgkin_huxley_1952());

} // namespace hhq::tl
