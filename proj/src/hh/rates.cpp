#include "hhq/hh/rates.hpp"

#include <cmath>

#include "hhq/errors.hpp"

namespace hhq::hh {

namespace {

// Guard band of +-1e-6 mV around the removable singularities, expressed in the scaled
// variable u = (V_s - V) / 10 mV.
constexpr double singular_band = 1e-7;

constexpr double millivolts_per_volt = 1e3;
constexpr double per_ms_to_per_s = 1e3;

} // namespace

double exprel_inverse(double x) noexcept
{
    if (std::abs(x) < singular_band) {
        return 1.0 - 0.5 * x + x * x / 12.0;
    }
    return x / std::expm1(x);
}

RateFunctions RateFunctions::hodgkin_huxley_1952()
{
    RateFunctions r;
    // Voltages in mV, rates in 1/ms inside each lambda; converted to SI at the boundary.
    r.alpha_n = [](double v) {
        const double mv = v * millivolts_per_volt;
        return per_ms_to_per_s * 0.1 * exprel_inverse((10.0 - mv) / 10.0);
    };
    r.beta_n = [](double v) {
        const double mv = v * millivolts_per_volt;
        return per_ms_to_per_s * 0.125 * std::exp(-mv / 80.0);
    };
    r.alpha_m = [](double v) {
        const double mv = v * millivolts_per_volt;
        return per_ms_to_per_s * exprel_inverse((25.0 - mv) / 10.0);
    };
    r.beta_m = [](double v) {
        const double mv = v * millivolts_per_volt;
        return per_ms_to_per_s * 4.0 * std::exp(-mv / 18.0);
    };
    r.alpha_h = [](double v) {
        const double mv = v * millivolts_per_volt;
        return per_ms_to_per_s * 0.07 * std::exp(-mv / 20.0);
    };
    r.beta_h = [](double v) {
        const double mv = v * millivolts_per_volt;
        return per_ms_to_per_s / (std::exp((30.0 - mv) / 10.0) + 1.0);
    };
    return r;
}

GateRates eval_rates(const RateFunctions& rates, double voltage)
{
    if (!std::isfinite(voltage)) {
        throw Error(ErrorKind::domain, "rate functions require a finite voltage");
    }
    return GateRates{
        rates.alpha_n(voltage), rates.beta_n(voltage), rates.alpha_m(voltage),
        rates.beta_m(voltage),  rates.alpha_h(voltage), rates.beta_h(voltage),
    };
}

double gate_steady_state(double alpha, double beta)
{
    const double total = alpha + beta;
    if (!(total > 0.0)) {
        throw Error(ErrorKind::domain, "gate steady state undefined when alpha + beta = 0");
    }
    return alpha / total;
}

double n_infinity(const RateFunctions& rates, double voltage)
{
    return gate_steady_state(rates.alpha_n(voltage), rates.beta_n(voltage));
}

double m_infinity(const RateFunctions& rates, double voltage)
{
    return gate_steady_state(rates.alpha_m(voltage), rates.beta_m(voltage));
}

double h_infinity(const RateFunctions& rates, double voltage)
{
    return gate_steady_state(rates.alpha_h(voltage), rates.beta_h(voltage));
}

} // namespace hhq::hh
