#pragma once

#include <functional>
#include <span>
#include <string>

#include "hhq/hh/rates.hpp"

namespace hhq::memristor {

/// Voltage-controlled memristive system: I = G(mu) V, dmu/dt = f(mu, V).
struct MemristiveSystem {
    double mu = 0.0;
    std::function<double(double)> conductance;        ///< G(mu), S
    std::function<double(double, double)> rate;       ///< f(mu, V), 1/s
};

/// G(mu) V for the system's current state. Throws Error(axiom_violation) if G(mu) < 0.
double memristor_current(const MemristiveSystem& sys, double voltage);

/// One fourth-order step of dmu/dt = f(mu, V) with V held over the step.
/// At V = 0 the state is returned unchanged (no dynamics without voltage).
double state_step(const MemristiveSystem& sys, double voltage, double dt);

struct AxiomReport {
    bool passive = true;         ///< G(mu) >= 0 on the sampled states
    bool static_at_zero = true;  ///< f(mu, 0) == 0 on the sampled states
    bool monotone = true;        ///< f(mu, .) monotone (either direction) on the voltage grid
    std::string detail;

    [[nodiscard]] bool ok() const noexcept { return passive && static_at_zero && monotone; }
};

/// Samples the two memristor axioms on a grid. `voltages` must be sorted ascending.
AxiomReport check_axioms(const MemristiveSystem& sys, std::span<const double> states,
                         std::span<const double> voltages);

/// Gate-form system f(mu, V) = alpha(V)(1 - mu) - beta(V) mu with conductance G(mu).
MemristiveSystem gate_memristor(double mu0, std::function<double(double)> alpha,
                                std::function<double(double)> beta, std::function<double(double)> conductance);

/// The potassium channel as a memristor: G(n) = gK_max n^4 with the n-gate rates.
MemristiveSystem potassium_channel(double n0, double gK_max,
                                   const hh::RateFunctions& rates = hh::RateFunctions::hodgkin_huxley_1952());

/// Rectified gate: alpha(V) = k max(V, 0), beta(V) = k max(-V, 0). Satisfies both axioms.
MemristiveSystem rectified_gate_memristor(double mu0, double k, std::function<double(double)> conductance);

} // namespace hhq::memristor
