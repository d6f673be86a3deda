#include "hhq/tl/impedance.hpp"

#include <algorithm>
#include <cmath>

#include "hhq/detail/ode.hpp"
#include "hhq/errors.hpp"
#include "hhq/tl/fluctuations.hpp"

namespace hhq::tl {

namespace {

// Below this the gate is treated as closed for good and Z as overflowed.
constexpr double n_floor = 1e-12;

ImpedanceState checked(double Z, double Zmin, double n, double t)
{
    if (!std::isfinite(Z) || !std::isfinite(n)) {
        throw IntegrationError(t, "impedance state became non-finite");
    }
    if (n < n_floor) {
        throw IntegrationError(t, "gate variable underflow: impedance diverges (n -> 0)");
    }
    return {Z, Zmin, n};
}

} // namespace

ImpedanceState ImpedanceState::from_gate(double n, double Zmin)
{
    if (!(Zmin > 0.0) || !(n > 0.0) || !(n <= 1.0)) {
        throw Error(ErrorKind::parameter, "impedance state needs Zmin > 0 and n in (0, 1]");
    }
    return {Zmin / std::pow(n, 4), Zmin, n};
}

ImpedanceState ImpedanceState::from_impedance(double Z, double Zmin)
{
    if (!(Zmin > 0.0) || !(Z >= Zmin) || !std::isfinite(Z)) {
        throw Error(ErrorKind::parameter, "impedance state needs Z >= Zmin > 0");
    }
    return {Z, Zmin, std::pow(Zmin / Z, 0.25)};
}

void ImpedanceState::validate() const
{
    if (!(Zmin > 0.0) || !(n > 0.0) || !(n <= 1.0)) {
        throw Error(ErrorKind::parameter, "impedance state needs Zmin > 0 and n in (0, 1]");
    }
    const double expected = Zmin / std::pow(n, 4);
    if (!(std::abs(Z - expected) <= 1e-9 * expected)) {
        throw Error(ErrorKind::parameter, "impedance state violates Z = Zmin n^-4");
    }
}

double impedance_derivative(double Z, double Zmin, double alpha, double beta) noexcept
{
    return -4.0 * Zmin * std::pow(Z / Zmin, 1.25) * alpha + 4.0 * Z * (alpha + beta);
}

ImpedanceState impedance_update_step(const ImpedanceState& state, double alpha, double beta, double dt,
                                     ImpedancePath path, hh::Scheme scheme, double t)
{
    if (!(dt > 0.0)) {
        throw Error(ErrorKind::parameter, "dt must be positive");
    }
    if (path == ImpedancePath::gate) {
        const double n = hh::gate_step(state.n, alpha, beta, dt, scheme);
        const double clamped = std::min(n, 1.0);
        return checked(state.Zmin / std::pow(clamped, 4), state.Zmin, clamped, t);
    }

    const double Zmin = state.Zmin;
    const auto rhs = [&](double, const detail::State<1>& y) {
        return detail::State<1>{impedance_derivative(std::max(y[0], Zmin), Zmin, alpha, beta)};
    };
    const detail::State<1> y0{state.Z};
    const detail::State<1> y1 = scheme == hh::Scheme::rk4 ? detail::rk4_step<1>(rhs, t, y0, dt)
                                                          : detail::euler_step<1>(rhs, t, y0, dt);
    const double Z = std::max(y1[0], Zmin);
    return checked(Z, Zmin, std::pow(Zmin / Z, 0.25), t);
}

ImpedanceState impedance_update_step(const ImpedanceState& state, double V, double dt,
                                     const hh::RateFunctions& rates, ImpedancePath path, hh::Scheme scheme,
                                     double t)
{
    if (!std::isfinite(V)) {
        throw IntegrationError(t, "non-finite voltage in impedance update");
    }
    return impedance_update_step(state, rates.alpha_n(V), rates.beta_n(V), dt, path, scheme, t);
}

TimeSeries simulate_quantized_hh(const TLParams& tl, const Drive& drive, const ImpedanceState& init,
                                 hh::TimeSpan span, const QuantizedSettings& settings,
                                 const hh::RateFunctions& rates)
{
    if (!drive.is_sinusoid()) {
        throw Error(ErrorKind::parameter, "the adiabatic line model needs a sinusoidal drive");
    }
    if (!(tl.Cc >= 0.0)) {
        throw Error(ErrorKind::parameter, "Cc must be >= 0");
    }
    init.validate();
    const double dt = settings.step.dt;
    if (!(dt > 0.0)) {
        throw Error(ErrorKind::parameter, "dt must be positive");
    }
    const std::size_t stride = std::max<std::size_t>(settings.refresh_stride, 1);
    const std::size_t steps = hh::step_count(span, dt);
    const double I0 = drive.amplitude();
    const double Omega = drive.angular_frequency();

    TimeSeries ts;
    ts.add_channel("V", "V");
    ts.add_channel("Z", "Ohm");
    ts.add_channel("g", "S");
    ts.add_channel("n", "1");
    ts.add_channel("I", "A");
    ts.add_channel("Imem", "A");
    ts.reserve(steps + 1);

    ImpedanceState state = init;
    double Z_seen = state.Z;
    for (std::size_t k = 0;; ++k) {
        const double t = span.start + static_cast<double>(k) * dt;
        if (k % stride == 0) {
            Z_seen = state.Z;
        }
        const double V = voltage_classical_source(I0, Omega, tl.Cc, Z_seen, t);
        const double g = 1.0 / Z_seen;
        ts.push_row({t, V, Z_seen, g, std::pow(state.Zmin / Z_seen, 0.25), drive(t), g * V});
        if (k == steps) {
            break;
        }
        state = impedance_update_step(state, V, dt, rates, settings.path, settings.step.scheme, t);
    }
    return ts;
}

} // namespace hhq::tl
