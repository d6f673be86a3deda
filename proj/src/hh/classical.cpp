#include "hhq/hh/classical.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hhq/detail/ode.hpp"
#include "hhq/errors.hpp"

namespace hhq::hh {

namespace {

using detail::State;

void check_step(TimeSpan span, StepSettings step)
{
    if (!(step.dt > 0.0) || !std::isfinite(step.dt)) {
        throw Error(ErrorKind::parameter, "time step must be positive and finite");
    }
    if (!(span.stop > span.start)) {
        throw Error(ErrorKind::parameter, "time span must have stop > start");
    }
}

void check_gate(double x, const char* name)
{
    if (!(x >= 0.0 && x <= 1.0)) {
        throw Error(ErrorKind::parameter, std::string("initial gate ") + name + " must lie in [0, 1]");
    }
}

double clamp_gate(double x) { return std::clamp(x, 0.0, 1.0); }

template <std::size_t N, class F>
State<N> advance(F&& f, double t, const State<N>& y, double dt, Scheme scheme)
{
    return scheme == Scheme::rk4 ? detail::rk4_step(f, t, y, dt) : detail::euler_step(f, t, y, dt);
}

} // namespace

HHParams HHParams::standard(double area_cm2)
{
    if (!(area_cm2 > 0.0)) {
        throw Error(ErrorKind::parameter, "membrane area must be positive");
    }
    HHParams p;
    p.Cg = 1e-6 * area_cm2;
    p.gK_max = 36e-3 * area_cm2;
    p.gNa_max = 120e-3 * area_cm2;
    p.gL = 0.3e-3 * area_cm2;
    return p;
}

void HHParams::validate() const
{
    if (!(Cg > 0.0)) {
        throw Error(ErrorKind::parameter, "membrane capacitance Cg must be positive");
    }
    if (!(gK_max >= 0.0) || !(gNa_max >= 0.0) || !(gL >= 0.0)) {
        throw Error(ErrorKind::parameter, "conductance maxima must be non-negative");
    }
    if (!std::isfinite(VK) || !std::isfinite(VNa) || !std::isfinite(VL)) {
        throw Error(ErrorKind::parameter, "resting potentials must be finite");
    }
}

std::size_t step_count(TimeSpan span, double dt)
{
    const double steps = (span.stop - span.start) / dt;
    return static_cast<std::size_t>(std::llround(std::ceil(steps - 1e-9)));
}

double gate_step(double x, double alpha, double beta, double dt, Scheme scheme)
{
    auto f = [alpha, beta](double, const State<1>& y) { return State<1>{gate_derivative(y[0], alpha, beta)}; };
    return advance(f, 0.0, State<1>{x}, dt, scheme)[0];
}

double adiabatic_voltage(double I0, double omega, double gK, double Cg, double VK, double t)
{
    const double den = gK * gK + Cg * Cg * omega * omega;
    if (den == 0.0) {
        throw Error(ErrorKind::domain, "adiabatic voltage undefined for gK = 0 at zero drive frequency");
    }
    return VK + I0 * (gK * std::sin(omega * t) - omega * Cg * std::cos(omega * t)) / den;
}

TimeSeries simulate_single_channel(const HHParams& params, const Drive& drive, const SingleChannelInit& init,
                                   TimeSpan span, StepSettings step, const RateFunctions& rates)
{
    params.validate();
    check_step(span, step);
    const double n0 = init.n ? *init.n : n_infinity(rates, init.V);
    check_gate(n0, "n");

    auto rhs = [&](double t, const State<2>& y) {
        const double V = y[0];
        const double n = y[1];
        const double n4 = n * n * n * n;
        return State<2>{
            (drive(t) - params.gK_max * n4 * (V - params.VK)) / params.Cg,
            gate_derivative(n, rates.alpha_n(V), rates.beta_n(V)),
        };
    };

    TimeSeries out;
    out.add_channel("V", "V");
    out.add_channel("n", "1");
    out.add_channel("gK", "S");
    out.add_channel("I", "A");
    out.add_channel("Imem", "A");

    const std::size_t steps = step_count(span, step.dt);
    out.reserve(steps + 1);

    State<2> y{init.V, n0};
    for (std::size_t k = 0;; ++k) {
        const double t = span.start + static_cast<double>(k) * step.dt;
        const double gK = params.gK_max * std::pow(y[1], 4);
        out.push_row({t, y[0], y[1], gK, drive(t), gK * (y[0] - params.VK)});
        if (k == steps) {
            break;
        }
        y = advance(rhs, t, y, step.dt, step.scheme);
        if (!detail::all_finite(y)) {
            throw IntegrationError(t + step.dt, "single-channel state became non-finite; reduce dt");
        }
        y[1] = clamp_gate(y[1]);
    }
    return out;
}

TimeSeries simulate_full_hh(const HHParams& params, const Drive& drive, const FullInit& init, TimeSpan span,
                            StepSettings step, const RateFunctions& rates)
{
    params.validate();
    check_step(span, step);
    const double n0 = init.n ? *init.n : n_infinity(rates, init.V);
    const double m0 = init.m ? *init.m : m_infinity(rates, init.V);
    const double h0 = init.h ? *init.h : h_infinity(rates, init.V);
    check_gate(n0, "n");
    check_gate(m0, "m");
    check_gate(h0, "h");

    auto rhs = [&](double t, const State<4>& y) {
        const double V = y[0];
        const double n = y[1];
        const double m = y[2];
        const double h = y[3];
        const double iK = params.gK_max * n * n * n * n * (V - params.VK);
        const double iNa = params.gNa_max * m * m * m * h * (V - params.VNa);
        const double iL = params.gL * (V - params.VL);
        const GateRates r = eval_rates(rates, V);
        return State<4>{
            (drive(t) - iK - iNa - iL) / params.Cg,
            gate_derivative(n, r.alpha_n, r.beta_n),
            gate_derivative(m, r.alpha_m, r.beta_m),
            gate_derivative(h, r.alpha_h, r.beta_h),
        };
    };

    TimeSeries out;
    for (const char* gate : {"V", "n", "m", "h"}) {
        out.add_channel(gate, gate[0] == 'V' ? "V" : "1");
    }
    out.add_channel("gK", "S");
    out.add_channel("gNa", "S");
    out.add_channel("I", "A");
    out.add_channel("Imem", "A");

    const std::size_t steps = step_count(span, step.dt);
    out.reserve(steps + 1);

    State<4> y{init.V, n0, m0, h0};
    for (std::size_t k = 0;; ++k) {
        const double t = span.start + static_cast<double>(k) * step.dt;
        const double gK = params.gK_max * std::pow(y[1], 4);
        const double gNa = params.gNa_max * y[2] * y[2] * y[2] * y[3];
        out.push_row({t, y[0], y[1], y[2], y[3], gK, gNa, drive(t), gK * (y[0] - params.VK)});
        if (k == steps) {
            break;
        }
        y = advance(rhs, t, y, step.dt, step.scheme);
        if (!detail::all_finite(y)) {
            throw IntegrationError(t + step.dt, "full Hodgkin-Huxley state became non-finite; reduce dt");
        }
        for (std::size_t g = 1; g < 4; ++g) {
            y[g] = clamp_gate(y[g]);
        }
    }
    return out;
}

TimeSeries simulate_single_channel_adiabatic(const HHParams& params, const Drive& drive, std::optional<double> n0,
                                             TimeSpan span, StepSettings step, const RateFunctions& rates)
{
    params.validate();
    check_step(span, step);
    if (!drive.is_sinusoid()) {
        throw Error(ErrorKind::parameter, "the adiabatic solution requires a sinusoidal drive");
    }
    double n = n0 ? *n0 : n_infinity(rates, 0.0);
    check_gate(n, "n");

    TimeSeries out;
    out.add_channel("V", "V");
    out.add_channel("n", "1");
    out.add_channel("gK", "S");
    out.add_channel("I", "A");
    out.add_channel("Imem", "A");

    const std::size_t steps = step_count(span, step.dt);
    out.reserve(steps + 1);

    for (std::size_t k = 0;; ++k) {
        const double t = span.start + static_cast<double>(k) * step.dt;
        const double gK = params.gK_max * std::pow(n, 4);
        const double V = adiabatic_voltage(drive.amplitude(), drive.angular_frequency(), gK, params.Cg, params.VK, t);
        out.push_row({t, V, n, gK, drive(t), gK * (V - params.VK)});
        if (k == steps) {
            break;
        }
        n = gate_step(n, rates.alpha_n(V), rates.beta_n(V), step.dt, step.scheme);
        if (!std::isfinite(n)) {
            throw IntegrationError(t + step.dt, "adiabatic gate became non-finite; reduce dt");
        }
        n = clamp_gate(n);
    }
    return out;
}

} // namespace hhq::hh
