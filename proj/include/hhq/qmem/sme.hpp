#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>

#include "hhq/memristor/memristor.hpp"
#include "hhq/qmem/density_matrix.hpp"
#include "hhq/qmem/operators.hpp"
#include "hhq/time_series.hpp"

namespace hhq::qmem {

struct SMEParams {
    double tau = 0.01;  ///< projection frequency
    double q0 = 1.0;    ///< charge uncertainty of the weak measurement
    std::function<double(double)> gamma = [](double mu) { return 0.01 + 0.09 * mu; };
    double lambda = 1.0;  ///< k_B T / hbar
    double dt = 0.0;
    std::uint64_t seed = 0;
    bool noise = false;  ///< draw Wiener increments in simulate_trajectory

    [[nodiscard]] double kappa() const { return tau / (q0 * q0); }
    /// Throws Error(parameter) on negative kappa or lambda, non-positive dt or q0, missing gamma.
    void validate() const;
};

/// The four deterministic generators, each already multiplied by its rate.
struct DriftTerms {
    ComplexMatrix hamiltonian;  ///< -(i/hbar)[H, rho]
    ComplexMatrix measurement;  ///< -kappa [q, [q, rho]]
    ComplexMatrix friction;     ///< -(i gamma/hbar)[phi, {q, rho}]
    ComplexMatrix diffusion;    ///< -(2 C lambda gamma/hbar)[phi, [phi, rho]]

    [[nodiscard]] ComplexMatrix total() const;
};

/// `bias` adds -q V_b to the Hamiltonian.
DriftTerms drift_terms(const DensityMatrix& rho, const OscillatorOps& ops, const SMEParams& params, double gamma,
                       double bias = 0.0);

/// {q, rho} - 2<q> rho, the coefficient of sqrt(2 kappa) dW.
ComplexMatrix measurement_backaction(const DensityMatrix& rho, const OscillatorOps& ops);

struct StepContext {
    double gamma = 0.0;                        ///< gamma(mu) for this step
    std::function<double(double)> bias;        ///< V_b(t); empty for none
    double t = 0.0;
};

/// One step of the stochastic master equation. The deterministic part is advanced with a
/// fourth-order Runge-Kutta step, the Wiener term with Euler-Maruyama; the result is
/// symmetrised and trace-normalised. Throws Error(instability) if the trace moved by more
/// than 1e-3 before normalisation.
DensityMatrix sme_step(const DensityMatrix& rho, const OscillatorOps& ops, const SMEParams& params, double dW,
                       const StepContext& ctx);

/// Convenience overload: gamma taken from params.gamma(mu), no bias.
DensityMatrix sme_step(const DensityMatrix& rho, const OscillatorOps& ops, const SMEParams& params, double dW,
                       double mu = 0.0);

struct TrajectoryOptions {
    /// Memristive update driven by <V>. An empty conductance means G(mu) = 2 C gamma(mu);
    /// an empty rate means the rectified gate with unit gain.
    memristor::MemristiveSystem memristor{0.5, {}, {}};
    std::function<double(double)> bias;
    std::size_t trajectory_index = 0;
    std::size_t positivity_stride = 10;
    double positivity_floor = -1e-6;
};

/// Channels: t, q, V, Imem, mu, gamma, energy, purity. Metadata records the positivity
/// monitor (minimum eigenvalue seen, breach flag) and the step count.
TimeSeries simulate_trajectory(const DensityMatrix& rho0, const OscillatorOps& ops, const SMEParams& params,
                               double T, const TrajectoryOptions& options = {});

/// Seed for trajectory `index` of an ensemble; streams for distinct indices are independent.
std::uint64_t stream_seed(std::uint64_t seed, std::size_t index);

} // namespace hhq::qmem
