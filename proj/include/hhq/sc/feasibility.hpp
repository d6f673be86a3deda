#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hhq/constants.hpp"
#include "hhq/time_series.hpp"

namespace hhq::sc {

/// rf-SQUID memristor and membrane constants, SI. Defaults are the published regime:
/// E_C = h x 1 GHz, E_L = 10^3 E_C, Delta ~ E_L, C_d = 5e-13 F, T10 = 1 us,
/// T_spike = 5 ms, Omega = 1e3 rad/s, Cc = 1e-13 F, G0 = 3.045e-9 S.
struct SCParams {
    double E_C = constants::planck * 1e9;
    double E_L = constants::planck * 1e12;
    double omega10 = 0.0;    ///< 0: derived as sqrt(2 E_C E_L)/hbar
    double Delta_gap = 0.0;  ///< 0: E_L
    double deltaE = 0.0;     ///< 0: 1e-2 hbar omega10
    double alpha_rs = 0.15;
    double C_d = 5e-13;
    double T10 = 1e-6;
    double T_spike = 5e-3;
    double I0 = 1e-9;
    double Omega = 1e3;
    double Cc = 1e-13;
    double G0 = 3.045e-9;
    double omega_mod = 0.0;  ///< conductance modulation frequency for traces; 0: 2 pi / T10
    bool modulation = true;  ///< false freezes G_qp at G0/2

    /// Copy with every "0 means derived" field filled in.
    [[nodiscard]] SCParams resolved() const;
    /// Throws Error(parameter) on non-positive energies, times, capacitances or negative alpha_rs.
    void validate() const;
};

/// (E_C / (32 E_L))^{1/4}
double derive_g0(double E_C, double E_L);

/// sqrt(2 E_C E_L) / hbar
double transition_frequency(double E_C, double E_L);

/// g0^2 exp(-g0^2) omega10 (C_d/2) 1e-4, the closed-form estimate that accompanies the quoted G0.
/// Logged alongside SCParams::G0, which stays authoritative.
double derive_G0(double g0, double omega10, double C_d);

/// G0 sin^2(pi/4 + sin(omega_mod t)/2)
double G_qp(double t, double G0, double omega_mod);

struct RegimeCheck {
    std::string name;
    std::string relation;
    double ratio = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

struct RegimeReport {
    std::vector<RegimeCheck> checks;
    double g0 = 0.0;
    double omega10 = 0.0;
    double G0 = 0.0;          ///< value used for the checks
    double G0_formula = 0.0;  ///< derive_G0 on the same inputs

    [[nodiscard]] bool pass() const noexcept;
    [[nodiscard]] const RegimeCheck& check(const std::string& name) const;
};

/// Evaluates every validity inequality; "a << b" passes when a/b < much_less (default 0.1) and
/// the adiabatic bound alpha_rs <= 0.15 is checked as a ratio against 1. Never throws on failure.
RegimeReport regime_check(const SCParams& params, double much_less = 0.1);

/// Closed-form membrane response with the oscillating quasiparticle conductance:
/// V/V0 = sin(Omega t) / sin^2(pi/4 + sin(omega_mod t)/2), V0 = I0/G0.
/// Samples uniformly at `samples_per_modulation` points per modulation period (or per drive
/// period when the modulation is off). Throws Error(resolution) below 20 samples per period.
/// Channels: t, I_norm (I/I0), V_norm (V/V0), G_qp (S), V (V), I (A).
TimeSeries simulate_sc_hh(const SCParams& params, double t_start, double t_stop,
                          std::size_t samples_per_modulation = 64);

} // namespace hhq::sc
