#include "hhq/io/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "hhq/constants.hpp"
#include "hhq/errors.hpp"
#include "hhq/hh/classical.hpp"
#include "hhq/io/csv.hpp"
#include "hhq/qmem/sme.hpp"
#include "hhq/tl/dual_line.hpp"
#include "hhq/tl/fluctuations.hpp"
#include "hhq/tl/impedance.hpp"

#ifndef HHQ_VERSION
#define HHQ_VERSION "0.0.0"
#endif

namespace hhq::io {

namespace {

constexpr double default_step_fraction = 1e-3;  // dt as a fraction of the natural period

struct Timeline {
    double t_end = 0.0;
    double dt = 0.0;
    std::optional<double> period;
};

Timeline timeline(const ScenarioConfig& cfg, std::optional<double> period, double default_periods)
{
    Timeline tl;
    tl.period = period;
    if (cfg.integrator.t_end) {
        tl.t_end = *cfg.integrator.t_end;
    } else if (period) {
        tl.t_end = cfg.integrator.periods.value_or(default_periods) * *period;
    } else {
        throw Error(ErrorKind::parse, "t_end is required in [integrator] when the drive has no period");
    }
    if (cfg.integrator.dt) {
        tl.dt = *cfg.integrator.dt;
    } else if (period) {
        tl.dt = default_step_fraction * *period;
    } else {
        throw Error(ErrorKind::parse, "dt is required in [integrator] when the drive has no period");
    }
    if (tl.dt > tl.t_end) {
        throw Error(ErrorKind::resolution, "dt is larger than the simulated span");
    }
    return tl;
}

std::optional<double> drive_period(const ScenarioConfig& cfg)
{
    if (cfg.drive.Omega && *cfg.drive.Omega > 0.0) {
        return constants::two_pi / *cfg.drive.Omega;
    }
    return std::nullopt;
}

Drive make_drive(const ScenarioConfig& cfg, const RunOptions& opts)
{
    if (cfg.drive.waveform == Waveform::sampled) {
        std::filesystem::path p = cfg.drive.samples_file;
        if (p.is_relative() && !opts.scenario_dir.empty()) {
            p = opts.scenario_dir / p;
        }
        auto [t, current] = read_drive_samples(p);
        return Drive::sampled(std::move(t), std::move(current));
    }
    return Drive::sinusoid(cfg.drive.I0.value_or(0.0), cfg.drive.Omega.value_or(0.0));
}

std::optional<double> optional_param(const ScenarioConfig& cfg, const std::string& key)
{
    const double v = cfg.param(key);
    return std::isnan(v) ? std::nullopt : std::optional<double>(v);
}

hh::HHParams membrane(const ScenarioConfig& cfg)
{
    hh::HHParams p;
    p.Cg = cfg.param("Cg");
    p.gK_max = cfg.param("gK_max");
    p.VK = cfg.param("VK");
    p.gNa_max = 0.0;
    p.gL = 0.0;
    if (cfg.model == Model::classical_full) {
        p.gNa_max = cfg.param("gNa_max");
        p.gL = cfg.param("gL");
        p.VNa = cfg.param("VNa");
        p.VL = cfg.param("VL");
    }
    return p;
}

/// Loop metrics when the trace holds enough cycles; otherwise only the pinch distance.
void attach_loop(MetricsReport& report, const TimeSeries& ts, std::optional<double> period)
{
    const auto [x, y] = default_loop_channels(ts);
    try {
        MetricsReport m = compute_metrics(ts, period, x, y);
        report.loop = std::move(m.loop);
        report.loop_x = x;
        report.loop_y = y;
        report.saturation_time = m.saturation_time;
        report.limit_cycle = m.limit_cycle;
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::insufficient_data) {
            throw;
        }
        report.values["pinch_distance"] = memristor::pinch_distance(ts[x], ts[y]);
    }
}

struct Outcome {
    TimeSeries trace;
    MetricsReport metrics;
};

Outcome run_classical(const ScenarioConfig& cfg, const RunOptions& opts)
{
    const Drive drive = make_drive(cfg, opts);
    const Timeline tl = timeline(cfg, drive_period(cfg), 20.0);
    const hh::TimeSpan span{0.0, tl.t_end};
    const hh::StepSettings step{tl.dt, cfg.integrator.scheme};
    const hh::HHParams p = membrane(cfg);

    Outcome out;
    switch (cfg.model) {
    case Model::classical:
        out.trace = hh::simulate_single_channel(p, drive, {cfg.param("V_init"), optional_param(cfg, "n_init")}, span, step);
        break;
    case Model::classical_full:
        out.trace = hh::simulate_full_hh(p, drive,
                                         {cfg.param("V_init"), optional_param(cfg, "n_init"),
                                          optional_param(cfg, "m_init"), optional_param(cfg, "h_init")},
                                         span, step);
        break;
    default:
        out.trace = hh::simulate_single_channel_adiabatic(p, drive, optional_param(cfg, "n_init"), span, step);
        break;
    }
    attach_loop(out.metrics, out.trace, tl.period);
    return out;
}

Outcome run_quantized(const ScenarioConfig& cfg)
{
    const Drive drive = Drive::sinusoid(*cfg.drive.I0, *cfg.drive.Omega);
    const Timeline tl = timeline(cfg, drive_period(cfg), 20.0);

    const double gK_max = cfg.param("gK_max");
    const auto zmin_given = optional_param(cfg, "Zmin");
    if (!zmin_given && !(gK_max > 0.0)) {
        throw Error(ErrorKind::parameter, "Zmin defaults to 1/gK_max, which needs gK_max > 0");
    }
    const double Zmin = zmin_given.value_or(1.0 / gK_max);
    const auto Z_init = optional_param(cfg, "Z_init");
    const auto n_init = optional_param(cfg, "n_init");
    if (Z_init && n_init) {
        throw Error(ErrorKind::parameter, "set at most one of Z_init and n_init");
    }
    const auto rates = hh::RateFunctions::hodgkin_huxley_1952();
    const tl::ImpedanceState init = Z_init ? tl::ImpedanceState::from_impedance(*Z_init, Zmin)
                                           : tl::ImpedanceState::from_gate(n_init.value_or(hh::n_infinity(rates, 0.0)), Zmin);

    tl::TLParams line;
    line.Z0 = init.Z;
    line.Cc = cfg.param("Cc");
    tl::QuantizedSettings settings;
    settings.step = {tl.dt, cfg.integrator.scheme};
    settings.path = cfg.integrator.path == "gate" ? tl::ImpedancePath::gate : tl::ImpedancePath::impedance;
    settings.refresh_stride = static_cast<std::size_t>(cfg.param("refresh_stride"));

    Outcome out;
    out.trace = tl::simulate_quantized_hh(line, drive, init, {0.0, tl.t_end}, settings, rates);
    attach_loop(out.metrics, out.trace, tl.period);

    const double Z_final = out.trace["Z"].back();
    const double omega_max = cfg.param("omega_max");
    if (omega_max > 0.0) {
        const auto vac = tl::vacuum_second_moment(line.Cc, Z_final, omega_max);
        out.metrics.values["vacuum_second_moment"] = vac.quadrature;
        out.metrics.values["vacuum_second_moment_closed_form"] = vac.closed_form;
        out.metrics.values["omega_max"] = vac.omega_max;
    }
    const double temperature = cfg.param("temperature");
    if (temperature > 0.0) {
        const auto th = tl::thermal_delta(Z_final, line.Cc, 1.0 / (constants::boltzmann * temperature));
        out.metrics.values["thermal_delta_bose"] = th.bose;
        out.metrics.values["thermal_delta_boltzmann"] = th.boltzmann;
        out.metrics.values["thermal_delta_closed_form"] = th.closed_form;
        out.metrics.values["thermal_omega_max"] = th.omega_max;
        out.metrics.values["thermal_tail_bound"] = th.tail_bound;
    }
    out.metrics.values["Zmin"] = Zmin;
    out.metrics.values["Z_final"] = Z_final;
    return out;
}

Outcome run_qmem(const ScenarioConfig& cfg)
{
    const double C = cfg.param("C");
    const double L = cfg.param("L");
    const bool natural = cfg.param("natural_units") != 0.0;
    const auto ops = qmem::build_operators(static_cast<std::size_t>(cfg.param("dim")), C, L,
                                           natural ? 1.0 : constants::hbar);
    const double period = constants::two_pi * std::sqrt(L * C);
    const Timeline tl = timeline(cfg, period, 3.0);

    const double gmin = cfg.param("gamma_min");
    const double gmax = cfg.param("gamma_max");
    if (gmin < 0.0 || gmax < 0.0) {
        throw Error(ErrorKind::parameter, "gamma_min and gamma_max must be >= 0");
    }
    qmem::SMEParams params;
    params.tau = cfg.param("tau");
    params.q0 = cfg.param("q0");
    params.lambda = cfg.param("lambda");
    params.gamma = [gmin, gmax](double mu) { return gmin + (gmax - gmin) * std::clamp(mu, 0.0, 1.0); };
    params.dt = tl.dt;
    params.seed = cfg.seed;
    params.noise = cfg.param("noise") != 0.0;

    qmem::TrajectoryOptions topts;
    topts.memristor = memristor::rectified_gate_memristor(cfg.param("mu_init"), cfg.param("gain"),
                                                          [gamma = params.gamma, C](double mu) { return 2.0 * C * gamma(mu); });
    topts.positivity_stride = std::max<std::size_t>(1, static_cast<std::size_t>(cfg.param("positivity_stride")));
    const double bias_amp = cfg.param("bias_amplitude");
    const double bias_omega = cfg.param("bias_omega");
    if (bias_amp != 0.0) {
        topts.bias = [bias_amp, bias_omega](double t) { return bias_amp * std::sin(bias_omega * t); };
    }

    const auto rho0 = qmem::DensityMatrix::coherent(ops.dim(), cfg.param("alpha0"));
    Outcome out;
    out.trace = qmem::simulate_trajectory(rho0, ops, params, tl.t_end, topts);
    attach_loop(out.metrics, out.trace, period);
    out.metrics.values["oscillator_period"] = period;
    return out;
}

Outcome run_two_tl(const ScenarioConfig& cfg)
{
    tl::TLParams line;
    line.Z0 = cfg.param("Z0");
    line.Z1 = cfg.param("Z1");
    line.Cg = cfg.param("Cg");
    line.Cc = cfg.param("Cc");
    line.V0 = cfg.param("V0");
    const double center = cfg.param("center");
    if (!(center > 0.0)) {
        throw Error(ErrorKind::parameter, "spectrum center must be positive");
    }
    const auto spectrum = tl::DriveSpectrum::gaussian(center, cfg.param("width"), cfg.param("peak"),
                                                      static_cast<std::size_t>(cfg.param("points")));
    const tl::DualLineEvaluator eval(spectrum, line, cfg.param("omega_max"));
    const Timeline tlm = timeline(cfg, constants::two_pi / center, 5.0);

    Outcome out;
    out.trace.add_channel("V", "V");
    out.trace.add_channel("second_moment", "V^2");
    out.trace.add_channel("correlation", "V^2");
    const std::size_t steps = hh::step_count({0.0, tlm.t_end}, tlm.dt);
    out.trace.reserve(steps + 1);
    for (std::size_t k = 0; k <= steps; ++k) {
        const double t = static_cast<double>(k) * tlm.dt;
        const auto r = eval(t);
        out.trace.push_row({t, r.voltage, r.second_moment, r.correlation_term});
    }
    out.metrics.values["reflection_term"] = eval.vacuum().reflection_term;
    out.metrics.values["source_vacuum_term"] = eval.vacuum().source_vacuum_term;
    out.metrics.values["omega_max"] = eval.vacuum().omega_max;
    return out;
}

sc::SCParams sc_params(const ScenarioConfig& cfg)
{
    sc::SCParams p;
    p.E_C = cfg.param("E_C");
    p.E_L = cfg.param("E_L");
    p.omega10 = cfg.param("omega10");
    p.Delta_gap = cfg.param("Delta_gap");
    p.deltaE = cfg.param("deltaE");
    p.alpha_rs = cfg.param("alpha_rs");
    p.C_d = cfg.param("C_d");
    p.T10 = cfg.param("T10");
    p.T_spike = cfg.param("T_spike");
    p.Cc = cfg.param("Cc");
    p.G0 = cfg.param("G0");
    p.omega_mod = cfg.param("omega_mod");
    p.modulation = cfg.param("modulation") != 0.0;
    if (cfg.drive.I0) {
        p.I0 = *cfg.drive.I0;
    }
    if (cfg.drive.Omega) {
        p.Omega = *cfg.drive.Omega;
    }
    return p;
}

Outcome run_sc(const ScenarioConfig& cfg)
{
    const sc::SCParams p = sc_params(cfg);
    const double period = constants::two_pi / p.Omega;
    double t_end = p.T_spike;
    if (cfg.integrator.t_end) {
        t_end = *cfg.integrator.t_end;
    } else if (cfg.integrator.periods) {
        t_end = *cfg.integrator.periods * period;
    }
    Outcome out;
    out.trace = sc::simulate_sc_hh(p, 0.0, t_end, static_cast<std::size_t>(cfg.param("samples_per_period")));
    out.metrics.regime = sc::regime_check(p, cfg.param("threshold"));
    attach_loop(out.metrics, out.trace, period);
    return out;
}

std::string hex(std::uint64_t v)
{
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string label(const ScenarioConfig& cfg)
{
    return "scenario '" + (cfg.name.empty() ? std::string(to_string(cfg.model)) : cfg.name) + "': ";
}

} // namespace

std::filesystem::path default_out_dir()
{
    if (const char* env = std::getenv("HHQ_OUT_DIR"); env != nullptr && *env != '\0') {
        return env;
    }
    return ".";
}

RunResult run_scenario(const ScenarioConfig& config, const RunOptions& options)
{
    ScenarioConfig cfg = config;
    if (options.seed) {
        cfg.seed = *options.seed;
    }

    Outcome out;
    try {
        switch (cfg.model) {
        case Model::classical:
        case Model::classical_full:
        case Model::classical_adiabatic: out = run_classical(cfg, options); break;
        case Model::quantized: out = run_quantized(cfg); break;
        case Model::qmem_sme: out = run_qmem(cfg); break;
        case Model::two_tl: out = run_two_tl(cfg); break;
        case Model::sc_feasibility: out = run_sc(cfg); break;
        }
    } catch (const Error& e) {
        throw Error(e.kind(), label(cfg) + e.what());
    }

    out.metrics.provenance = {hex(cfg.source_hash), cfg.seed, HHQ_VERSION, std::string(to_string(cfg.model))};
    out.metrics.metadata = out.trace.metadata;

    RunResult result;
    if (options.write_files) {
        const std::filesystem::path dir = options.out_dir.empty() ? default_out_dir() : options.out_dir;
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec) {
            throw Error(ErrorKind::io, "cannot create output directory '" + dir.string() + "': " + ec.message());
        }
        result.csv_path = dir / cfg.outputs.csv;
        result.json_path = dir / cfg.outputs.json;
        try {
            write_csv_file(out.trace, result.csv_path, cfg.outputs.channels);
        } catch (const Error& e) {
            throw Error(e.kind(), label(cfg) + e.what());
        }
        std::ofstream json(result.json_path, std::ios::binary | std::ios::trunc);
        json << to_json(out.metrics);
        json.flush();
        if (!json) {
            throw Error(ErrorKind::io, "cannot write '" + result.json_path.string() + "'");
        }
    }
    result.trace = std::move(out.trace);
    result.metrics = std::move(out.metrics);
    return result;
}

sc::RegimeReport check_regime(const ScenarioConfig& config)
{
    if (config.model != Model::sc_feasibility) {
        throw Error(ErrorKind::parameter, "check-regime needs an sc-feasibility scenario, got model " +
                                              std::string(to_string(config.model)));
    }
    return sc::regime_check(sc_params(config), config.param("threshold"));
}

} // namespace hhq::io
