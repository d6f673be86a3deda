#include "hhq/qmem/sme.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <string>

#include "hhq/errors.hpp"

namespace hhq::qmem {

namespace {

constexpr cplx I{0.0, 1.0};

struct Scratch {
    ComplexMatrix a, b, c;
    explicit Scratch(std::size_t d) : a(d), b(d), c(d) {}
};

Tridiagonal hamiltonian_band(const OscillatorOps& ops, double bias)
{
    Tridiagonal h = ops.H_band;
    if (bias != 0.0) {
        for (std::size_t k = 0; k + 1 < h.dim(); ++k) {
            h.lower[k] -= bias * ops.q_band.lower[k];
            h.upper[k] -= bias * ops.q_band.upper[k];
        }
    }
    return h;
}

double expectation(const ComplexMatrix& rho, const Tridiagonal& t)
{
    cplx sum = 0.0;
    const std::size_t d = rho.dim();
    for (std::size_t i = 0; i < d; ++i) {
        sum += rho(i, i) * t.diag[i];
        if (i + 1 < d) {
            sum += rho(i, i + 1) * t.lower[i] + rho(i + 1, i) * t.upper[i];
        }
    }
    return sum.real();
}

void add_hamiltonian(const ComplexMatrix& rho, const Tridiagonal& h, double hbar, ComplexMatrix& out, Scratch& s)
{
    commutator(h, rho, s.a, s.b);
    out.add_scaled(-I / hbar, s.a);
}

void add_measurement(const ComplexMatrix& rho, const OscillatorOps& ops, double kappa, ComplexMatrix& out,
                     Scratch& s)
{
    if (kappa == 0.0) {
        return;
    }
    commutator(ops.q_band, rho, s.a, s.b);
    commutator(ops.q_band, s.a, s.c, s.b);
    out.add_scaled(-kappa, s.c);
}

void add_friction(const ComplexMatrix& rho, const OscillatorOps& ops, double gamma, ComplexMatrix& out, Scratch& s)
{
    if (gamma == 0.0) {
        return;
    }
    anticommutator(ops.q_band, rho, s.a, s.b);
    commutator(ops.phi_band, s.a, s.c, s.b);
    out.add_scaled(-I * gamma / ops.hbar, s.c);
}

void add_diffusion(const ComplexMatrix& rho, const OscillatorOps& ops, double gamma, double lambda,
                   ComplexMatrix& out, Scratch& s)
{
    const double rate = 2.0 * ops.C * lambda * gamma / ops.hbar;
    if (rate == 0.0) {
        return;
    }
    commutator(ops.phi_band, rho, s.a, s.b);
    commutator(ops.phi_band, s.a, s.c, s.b);
    out.add_scaled(-rate, s.c);
}

void drift(const ComplexMatrix& rho, const OscillatorOps& ops, const SMEParams& params, double gamma,
           const Tridiagonal& h, ComplexMatrix& out, Scratch& s)
{
    out.set_zero();
    add_hamiltonian(rho, h, ops.hbar, out, s);
    add_measurement(rho, ops, params.kappa(), out, s);
    add_friction(rho, ops, gamma, out, s);
    add_diffusion(rho, ops, gamma, params.lambda, out, s);
}

void require_dims(const DensityMatrix& rho, const OscillatorOps& ops)
{
    if (rho.dim() != ops.dim()) {
        throw Error(ErrorKind::parameter, "density matrix and operators have different dimensions");
    }
}

std::string format_double(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9e", v);
    return buf;
}

} // namespace

void SMEParams::validate() const
{
    if (!(q0 > 0.0) || !std::isfinite(q0)) {
        throw Error(ErrorKind::parameter, "q0 must be positive");
    }
    if (!(tau >= 0.0) || !std::isfinite(tau)) {
        throw Error(ErrorKind::parameter, "tau must be >= 0 (kappa >= 0)");
    }
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        throw Error(ErrorKind::parameter, "lambda must be >= 0");
    }
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw Error(ErrorKind::parameter, "dt must be positive");
    }
    if (!gamma) {
        throw Error(ErrorKind::parameter, "gamma(mu) map is required");
    }
}

ComplexMatrix DriftTerms::total() const
{
    ComplexMatrix out = hamiltonian;
    out += measurement;
    out += friction;
    out += diffusion;
    return out;
}

DriftTerms drift_terms(const DensityMatrix& rho, const OscillatorOps& ops, const SMEParams& params, double gamma,
                       double bias)
{
    require_dims(rho, ops);
    const std::size_t d = rho.dim();
    Scratch s(d);
    DriftTerms terms{ComplexMatrix(d), ComplexMatrix(d), ComplexMatrix(d), ComplexMatrix(d)};
    add_hamiltonian(rho.matrix(), hamiltonian_band(ops, bias), ops.hbar, terms.hamiltonian, s);
    add_measurement(rho.matrix(), ops, params.kappa(), terms.measurement, s);
    add_friction(rho.matrix(), ops, gamma, terms.friction, s);
    add_diffusion(rho.matrix(), ops, gamma, params.lambda, terms.diffusion, s);
    return terms;
}

ComplexMatrix measurement_backaction(const DensityMatrix& rho, const OscillatorOps& ops)
{
    require_dims(rho, ops);
    ComplexMatrix out(rho.dim());
    ComplexMatrix scratch(rho.dim());
    anticommutator(ops.q_band, rho.matrix(), out, scratch);
    out.add_scaled(-2.0 * expectation(rho.matrix(), ops.q_band), rho.matrix());
    return out;
}

DensityMatrix sme_step(const DensityMatrix& rho, const OscillatorOps& ops, const SMEParams& params, double dW,
                       const StepContext& ctx)
{
    require_dims(rho, ops);
    if (!(ctx.gamma >= 0.0) || !std::isfinite(ctx.gamma)) {
        throw IntegrationError(ctx.t, "gamma(mu) must be finite and >= 0", ErrorKind::parameter);
    }
    const std::size_t d = rho.dim();
    const double h = params.dt;
    const auto band_at = [&](double t) { return hamiltonian_band(ops, ctx.bias ? ctx.bias(t) : 0.0); };
    const Tridiagonal h0 = band_at(ctx.t);
    const Tridiagonal h_mid = ctx.bias ? band_at(ctx.t + 0.5 * h) : h0;
    const Tridiagonal h1 = ctx.bias ? band_at(ctx.t + h) : h0;

    Scratch s(d);
    ComplexMatrix k1(d), k2(d), k3(d), k4(d);
    const ComplexMatrix& y = rho.matrix();

    drift(y, ops, params, ctx.gamma, h0, k1, s);
    ComplexMatrix stage = y;
    stage.add_scaled(0.5 * h, k1);
    drift(stage, ops, params, ctx.gamma, h_mid, k2, s);
    stage = y;
    stage.add_scaled(0.5 * h, k2);
    drift(stage, ops, params, ctx.gamma, h_mid, k3, s);
    stage = y;
    stage.add_scaled(h, k3);
    drift(stage, ops, params, ctx.gamma, h1, k4, s);

    ComplexMatrix next = y;
    next.add_scaled(h / 6.0, k1);
    next.add_scaled(h / 3.0, k2);
    next.add_scaled(h / 3.0, k3);
    next.add_scaled(h / 6.0, k4);

    const double kappa = params.kappa();
    if (dW != 0.0 && kappa > 0.0) {
        next.add_scaled(std::sqrt(2.0 * kappa) * dW, measurement_backaction(rho, ops));
    }

    DensityMatrix out(std::move(next));
    out.symmetrize();
    const double tr = out.trace();
    if (!std::isfinite(tr) || std::abs(tr - 1.0) > 1e-3) {
        throw IntegrationError(ctx.t, "trace drifted by " + format_double(tr - 1.0) + "; reduce dt",
                               ErrorKind::instability);
    }
    out.renormalize();
    return out;
}

DensityMatrix sme_step(const DensityMatrix& rho, const OscillatorOps& ops, const SMEParams& params, double dW,
                       double mu)
{
    StepContext ctx;
    ctx.gamma = params.gamma(mu);
    return sme_step(rho, ops, params, dW, ctx);
}

std::uint64_t stream_seed(std::uint64_t seed, std::size_t index)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(static_cast<std::uint64_t>(index) >> 32)};
    std::uint32_t words[2];
    seq.generate(words, words + 2);
    return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

TimeSeries simulate_trajectory(const DensityMatrix& rho0, const OscillatorOps& ops, const SMEParams& params,
                               double T, const TrajectoryOptions& options)
{
    params.validate();
    require_dims(rho0, ops);
    if (!(T > 0.0) || !std::isfinite(T)) {
        throw Error(ErrorKind::parameter, "trajectory length must be positive");
    }
    const double dt = params.dt;
    const auto steps = static_cast<std::size_t>(std::llround(T / dt));
    if (steps == 0) {
        throw Error(ErrorKind::resolution, "trajectory shorter than one step");
    }

    memristor::MemristiveSystem mem = options.memristor;
    if (!mem.conductance) {
        mem.conductance = [gamma = params.gamma, C = ops.C](double mu) { return 2.0 * C * gamma(mu); };
    }
    if (!mem.rate) {
        mem = memristor::rectified_gate_memristor(mem.mu, 1.0, mem.conductance);
    }

    TimeSeries ts;
    ts.add_channel("q", ops.hbar == constants::hbar ? "C" : "1");
    ts.add_channel("V", ops.hbar == constants::hbar ? "V" : "1");
    ts.add_channel("Imem", ops.hbar == constants::hbar ? "A" : "1");
    ts.add_channel("mu", "1");
    ts.add_channel("gamma", ops.hbar == constants::hbar ? "1/s" : "1");
    ts.add_channel("energy", ops.hbar == constants::hbar ? "J" : "1");
    ts.add_channel("purity", "1");
    ts.reserve(steps + 1);

    std::mt19937_64 rng(stream_seed(params.seed, options.trajectory_index));
    std::normal_distribution<double> normal(0.0, std::sqrt(dt));

    DensityMatrix rho = rho0;
    double min_eig = std::numeric_limits<double>::infinity();
    bool breached = false;
    const std::size_t stride = std::max<std::size_t>(options.positivity_stride, 1);

    StepContext ctx;
    ctx.bias = options.bias;
    for (std::size_t k = 0;; ++k) {
        const double t = static_cast<double>(k) * dt;
        const double q = rho.expectation(ops.q_band);
        const double v = q / ops.C;
        const double gamma = params.gamma(mem.mu);
        const double current = memristor::memristor_current(mem, v);
        ts.push_row({t, q, v, current, mem.mu, gamma, rho.expectation(ops.H_band), rho.purity()});

        if (k % stride == 0 || k == steps) {
            const double e = rho.min_eigenvalue();
            min_eig = std::min(min_eig, e);
            breached = breached || e < options.positivity_floor;
        }
        if (k == steps) {
            break;
        }

        ctx.gamma = gamma;
        ctx.t = t;
        const double dW = params.noise ? normal(rng) : 0.0;
        rho = sme_step(rho, ops, params, dW, ctx);
        mem.mu = memristor::state_step(mem, v, dt);
    }

    ts.metadata["positivity_min_eigenvalue"] = format_double(min_eig);
    ts.metadata["positivity_breached"] = breached ? "true" : "false";
    ts.metadata["steps"] = std::to_string(steps);
    ts.metadata["dim"] = std::to_string(ops.dim());
    ts.metadata["kappa"] = format_double(params.kappa());
    return ts;
}

} // namespace hhq::qmem
