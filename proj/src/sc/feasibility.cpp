#include "hhq/sc/feasibility.hpp"

#include <algorithm>
#include <cmath>

#include "hhq/errors.hpp"

namespace hhq::sc {

namespace {

constexpr double adiabatic_limit = 0.15;
constexpr std::size_t min_samples_per_period = 20;

void require_positive(double v, const char* name)
{
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw Error(ErrorKind::parameter, std::string(name) + " must be positive");
    }
}

RegimeCheck much_less(std::string name, std::string relation, double ratio, double threshold)
{
    return {std::move(name), std::move(relation), ratio, threshold, ratio < threshold};
}

} // namespace

SCParams SCParams::resolved() const
{
    SCParams p = *this;
    if (p.omega10 == 0.0) {
        p.omega10 = transition_frequency(p.E_C, p.E_L);
    }
    if (p.Delta_gap == 0.0) {
        p.Delta_gap = p.E_L;
    }
    if (p.deltaE == 0.0) {
        p.deltaE = 1e-2 * constants::hbar * p.omega10;
    }
    if (p.omega_mod == 0.0) {
        p.omega_mod = constants::two_pi / p.T10;
    }
    return p;
}

void SCParams::validate() const
{
    require_positive(E_C, "E_C");
    require_positive(E_L, "E_L");
    require_positive(C_d, "C_d");
    require_positive(T10, "T10");
    require_positive(T_spike, "T_spike");
    require_positive(Cc, "Cc");
    require_positive(G0, "G0");
    require_positive(Omega, "Omega");
    if (!(alpha_rs >= 0.0)) {
        throw Error(ErrorKind::parameter, "alpha_rs must be >= 0");
    }
    if (!(I0 >= 0.0) || !std::isfinite(I0)) {
        throw Error(ErrorKind::parameter, "I0 must be finite and >= 0");
    }
    for (double v : {omega10, Delta_gap, deltaE, omega_mod}) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw Error(ErrorKind::parameter, "omega10, Delta_gap, deltaE, omega_mod must be >= 0 (0 = derived)");
        }
    }
}

double derive_g0(double E_C, double E_L)
{
    require_positive(E_C, "E_C");
    require_positive(E_L, "E_L");
    return std::pow(E_C / (32.0 * E_L), 0.25);
}

double transition_frequency(double E_C, double E_L) { return std::sqrt(2.0 * E_C * E_L) / constants::hbar; }

double derive_G0(double g0, double omega10, double C_d)
{
    const double g2 = g0 * g0;
    return g2 * std::exp(-g2) * omega10 * (C_d / 2.0) * 1e-4;
}

double G_qp(double t, double G0, double omega_mod)
{
    const double s = std::sin(0.25 * constants::pi + 0.5 * std::sin(omega_mod * t));
    return G0 * s * s;
}

bool RegimeReport::pass() const noexcept
{
    for (const auto& c : checks) {
        if (!c.pass) {
            return false;
        }
    }
    return true;
}

const RegimeCheck& RegimeReport::check(const std::string& name) const
{
    for (const auto& c : checks) {
        if (c.name == name) {
            return c;
        }
    }
    throw Error(ErrorKind::parameter, "no regime check named " + name);
}

RegimeReport regime_check(const SCParams& params, double threshold)
{
    params.validate();
    const SCParams p = params.resolved();
    const double e10 = constants::hbar * p.omega10;

    RegimeReport r;
    r.g0 = derive_g0(p.E_C, p.E_L);
    r.omega10 = p.omega10;
    r.G0 = p.G0;
    r.G0_formula = derive_G0(r.g0, p.omega10, p.C_d);

    r.checks.push_back(much_less("transition_below_gap", "hbar*omega10 << 2*Delta", e10 / (2.0 * p.Delta_gap), threshold));
    r.checks.push_back(much_less("quasiparticle_below_gap", "deltaE << 2*Delta", p.deltaE / (2.0 * p.Delta_gap), threshold));
    r.checks.push_back(much_less("quasiparticle_below_transition", "deltaE << hbar*omega10", p.deltaE / e10, threshold));
    {
        const double ratio = p.alpha_rs / adiabatic_limit;
        r.checks.push_back({"adiabatic_parameter", "alpha_rs <= 0.15", ratio, 1.0, ratio <= 1.0});
    }
    r.checks.push_back(much_less("relaxation_before_spike", "T10 << T_spike", p.T10 / p.T_spike, threshold));
    r.checks.push_back(much_less("capacitive_current", "Cc*Omega/G0 << 1", p.Cc * p.Omega / p.G0, threshold));
    return r;
}

TimeSeries simulate_sc_hh(const SCParams& params, double t_start, double t_stop, std::size_t samples_per_modulation)
{
    params.validate();
    const SCParams p = params.resolved();
    if (!(t_stop > t_start) || !std::isfinite(t_start) || !std::isfinite(t_stop)) {
        throw Error(ErrorKind::parameter, "time span must satisfy t_stop > t_start");
    }
    if (samples_per_modulation < min_samples_per_period) {
        throw Error(ErrorKind::resolution, "need at least 20 samples per modulation period, got " +
                                               std::to_string(samples_per_modulation));
    }
    const double w_mod = p.modulation ? p.omega_mod : 0.0;
    const double fast = std::max(w_mod, p.Omega);
    const double dt = constants::two_pi / fast / static_cast<double>(samples_per_modulation);
    const auto steps = static_cast<std::size_t>(std::ceil((t_stop - t_start) / dt - 1e-9));
    if (steps > 50'000'000) {
        throw Error(ErrorKind::resolution, "modulation too fast to sample over this span");
    }

    const double V0 = p.I0 / p.G0;
    TimeSeries ts;
    ts.add_channel("I_norm", "1");
    ts.add_channel("V_norm", "1");
    ts.add_channel("G_qp", "S");
    ts.add_channel("V", "V");
    ts.add_channel("I", "A");
    ts.reserve(steps + 1);
    for (std::size_t k = 0; k <= steps; ++k) {
        const double t = k == steps ? t_stop : t_start + static_cast<double>(k) * dt;
        const double i_norm = std::sin(p.Omega * t);
        const double g = G_qp(t, p.G0, w_mod);
        const double v_norm = i_norm * p.G0 / g;
        ts.push_row({t, i_norm, v_norm, g, v_norm * V0, i_norm * p.I0});
    }
    ts.metadata["omega_mod"] = std::to_string(w_mod);
    ts.metadata["samples_per_period"] = std::to_string(samples_per_modulation);
    return ts;
}

} // namespace hhq::sc
