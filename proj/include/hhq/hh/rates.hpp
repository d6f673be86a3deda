#pragma once

#include <functional>

namespace hhq::hh {

/// Opening/closing rates of the n, m, h gates. Each maps membrane voltage (V, measured as
/// displacement from rest) to a rate in 1/s.
struct RateFunctions {
    std::function<double(double)> alpha_n;
    std::function<double(double)> beta_n;
    std::function<double(double)> alpha_m;
    std::function<double(double)> beta_m;
    std::function<double(double)> alpha_h;
    std::function<double(double)> beta_h;

    /// Original 1952 squid-axon forms, resting potential at 0 V, depolarization positive.
    static RateFunctions hodgkin_huxley_1952();
};

struct GateRates {
    double alpha_n;
    double beta_n;
    double alpha_m;
    double beta_m;
    double alpha_h;
    double beta_h;
};

/// Evaluates all six rates. Throws Error(domain) for a non-finite voltage.
GateRates eval_rates(const RateFunctions& rates, double voltage);

/// dx/dt = alpha (1 - x) - beta x
constexpr double gate_derivative(double x, double alpha, double beta) noexcept
{
    return alpha * (1.0 - x) - beta * x;
}

/// Stationary gate value alpha / (alpha + beta).
double gate_steady_state(double alpha, double beta);

/// n_inf(V) for the potassium activation gate.
double n_infinity(const RateFunctions& rates, double voltage);
double m_infinity(const RateFunctions& rates, double voltage);
double h_infinity(const RateFunctions& rates, double voltage);

/// x / (exp(x) - 1), continuous through x = 0. The 1952 alpha_n and alpha_m are scaled copies.
double exprel_inverse(double x) noexcept;

} // namespace hhq::hh
