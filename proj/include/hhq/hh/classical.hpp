#pragma once

#include <cstddef>
#include <optional>

#include "hhq/drive.hpp"
#include "hhq/hh/rates.hpp"
#include "hhq/time_series.hpp"

namespace hhq::hh {

/// Membrane circuit constants, SI (F, S, V).
struct HHParams {
    double Cg = 1e-6;
    double gK_max = 36e-3;
    double gNa_max = 120e-3;
    double gL = 0.3e-3;
    double VK = 0.0;
    double VNa = 115e-3;
    double VL = 10.613e-3;

    /// Standard squid-axon values for a membrane patch of `area_cm2` square centimetres:
    /// 1 uF/cm2, 36 / 120 / 0.3 mS/cm2.
    static HHParams standard(double area_cm2 = 1.0);

    /// Throws Error(parameter) unless Cg > 0 and every conductance maximum is >= 0.
    void validate() const;
};

enum class Scheme { rk4, euler };

struct StepSettings {
    double dt = 0.0;
    Scheme scheme = Scheme::rk4;
};

struct TimeSpan {
    double start = 0.0;
    double stop = 0.0;
};

/// Number of uniform steps covering the span; the last sample sits at start + steps * dt.
std::size_t step_count(TimeSpan span, double dt);

struct SingleChannelInit {
    double V = 0.0;
    std::optional<double> n;  ///< defaults to n_inf(V)
};

struct FullInit {
    double V = 0.0;
    std::optional<double> n;
    std::optional<double> m;
    std::optional<double> h;
};

/// One step of the gate ODE with the rates held fixed over the step.
double gate_step(double x, double alpha, double beta, double dt, Scheme scheme = Scheme::rk4);

/// Potassium-only membrane: Cg dV/dt = I(t) - gK_max n^4 (V - VK), dn/dt = gate(n; V).
/// Channels: t, V (V), n, gK (S), I (A), Imem (A) = gK (V - VK).
TimeSeries simulate_single_channel(const HHParams& params, const Drive& drive, const SingleChannelInit& init,
                                   TimeSpan span, StepSettings step,
                                   const RateFunctions& rates = RateFunctions::hodgkin_huxley_1952());

/// Three-channel membrane (K, Na, leak).
/// Channels: t, V, n, m, h, gK, gNa, I, Imem (potassium branch current).
TimeSeries simulate_full_hh(const HHParams& params, const Drive& drive, const FullInit& init, TimeSpan span,
                            StepSettings step, const RateFunctions& rates = RateFunctions::hodgkin_huxley_1952());

/// Adiabatic single channel: at every step V takes the stationary sinusoidal response with gK
/// frozen at the current n, then n advances one step with that V held fixed.
/// Channels: t, V, n, gK, I, Imem.
TimeSeries simulate_single_channel_adiabatic(const HHParams& params, const Drive& drive, std::optional<double> n0,
                                             TimeSpan span, StepSettings step,
                                             const RateFunctions& rates = RateFunctions::hodgkin_huxley_1952());

/// Stationary response VK + I0 (gK sin wt - w Cg cos wt) / (gK^2 + Cg^2 w^2).
/// Throws Error(domain) when gK = 0 and w = 0.
double adiabatic_voltage(double I0, double omega, double gK, double Cg, double VK, double t);

} // namespace hhq::hh
