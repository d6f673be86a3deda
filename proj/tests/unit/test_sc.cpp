#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "hhq/constants.hpp"
#include "hhq/errors.hpp"
#include "hhq/memristor/loop_metrics.hpp"
#include "hhq/sc/feasibility.hpp"
#include "support/oracles.hpp"

using namespace hhq;
using namespace hhq::sc;
using Catch::Approx;
constexpr double pi = std::numbers::pi;

TEST_CASE("junction constants from the published energies", "[sc]")
{
    const SCParams p;
    CHECK(derive_g0(p.E_C, p.E_L) == Approx(7.476e-2).epsilon(1e-3));
    CHECK(derive_g0(p.E_C, p.E_L) == Approx(std::pow(1.0 / 32000.0, 0.25)).epsilon(1e-14));
    CHECK(transition_frequency(p.E_C, p.E_L) == Approx(2.0 * pi * std::sqrt(2.0) * 1e9 * std::sqrt(1e3)).epsilon(1e-12));
    const double g0 = 0.07476, w10 = 2.8e11;
    CHECK(derive_G0(g0, w10, 5e-13) == Approx(g0 * g0 * std::exp(-g0 * g0) * w10 * 2.5e-13 * 1e-4).epsilon(1e-14));
    REQUIRE_THROWS_AS(derive_g0(0.0, 1.0), Error);
}

TEST_CASE("derived fields resolve", "[sc]")
{
    const SCParams r = SCParams{}.resolved();
    CHECK(r.omega10 == Approx(transition_frequency(r.E_C, r.E_L)));
    CHECK(r.Delta_gap == r.E_L);
    CHECK(r.deltaE == Approx(1e-2 * constants::hbar * r.omega10));
    CHECK(r.omega_mod == Approx(2.0 * pi / r.T10));

    SCParams explicit_values;
    explicit_values.omega10 = 1e11;
    explicit_values.omega_mod = 5.0;
    CHECK(explicit_values.resolved().omega10 == 1e11);
    CHECK(explicit_values.resolved().omega_mod == 5.0);

    SCParams bad;
    bad.C_d = 0.0;
    REQUIRE_THROWS_AS(bad.validate(), Error);
    bad = {};
    bad.alpha_rs = -0.1;
    REQUIRE_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("quasiparticle conductance bounds and mean", "[sc]")
{
    const double G0 = 3.045e-9, w = 2.0 * pi / 1e-6;
    const double lo = G0 * (1.0 - std::sin(1.0)) / 2.0;
    const double hi = G0 * (1.0 + std::sin(1.0)) / 2.0;
    double seen_lo = INFINITY, seen_hi = 0.0;
    for (int k = 0; k < 100000; ++k) {
        const double g = G_qp(k * 1.37e-11, G0, w);
        REQUIRE(g >= lo * (1.0 - 1e-12));
        REQUIRE(g <= hi * (1.0 + 1e-12));
        seen_lo = std::min(seen_lo, g);
        seen_hi = std::max(seen_hi, g);
    }
    CHECK(seen_lo == Approx(lo).epsilon(1e-6));
    CHECK(seen_hi == Approx(hi).epsilon(1e-6));
    CHECK(lo / G0 == Approx(0.0793).margin(1e-4));
    CHECK(hi / G0 == Approx(0.9207).margin(1e-4));

    // sin^2(pi/4 + x/2) = (1 + sin x)/2 and sin(sin wt) averages to zero over a period.
    std::vector<double> t, g;
    const int n = 4096;
    for (int k = 0; k <= 3 * n; ++k) {
        t.push_back(3e-6 * k / (3.0 * n));
        g.push_back(G_qp(t.back(), G0, w));
    }
    CHECK(test::trapezoid(t, g) / 3e-6 == Approx(G0 / 2.0).epsilon(1e-10));
    CHECK(G_qp(0.123, G0, 0.0) == Approx(G0 / 2.0));
}

TEST_CASE("regime check on the published defaults", "[sc]")
{
    const auto r = regime_check(SCParams{});
    CHECK(r.pass());
    CHECK(r.checks.size() == 6);
    CHECK(r.check("capacitive_current").ratio == Approx(0.0328).epsilon(2e-2));
    CHECK(r.check("relaxation_before_spike").ratio == Approx(2e-4));
    CHECK(r.check("adiabatic_parameter").ratio == Approx(1.0));
    CHECK(r.check("transition_below_gap").ratio < 0.1);
    CHECK(r.check("quasiparticle_below_transition").ratio == Approx(0.01));
    CHECK(r.g0 == Approx(7.476e-2).epsilon(1e-3));
    CHECK(r.G0 == 3.045e-9);
    CHECK(r.G0_formula == Approx(derive_G0(r.g0, r.omega10, 5e-13)));
    REQUIRE_THROWS_AS(r.check("no_such_check"), Error);
}

TEST_CASE("regime check failures", "[sc]")
{
    SCParams p;
    p.T10 = p.T_spike;
    auto r = regime_check(p);
    CHECK_FALSE(r.pass());
    CHECK_FALSE(r.check("relaxation_before_spike").pass);
    CHECK(r.check("relaxation_before_spike").ratio == Approx(1.0));

    p = {};
    p.alpha_rs = 0.2;
    CHECK_FALSE(regime_check(p).check("adiabatic_parameter").pass);

    p = {};
    p.Omega = 1e5;  // Cc Omega / G0 = 3.3
    CHECK_FALSE(regime_check(p).check("capacitive_current").pass);

    // A looser "much less" threshold flips a marginal check.
    p = {};
    p.T10 = 1e-3;  // ratio 0.2
    CHECK_FALSE(regime_check(p).check("relaxation_before_spike").pass);
    CHECK(regime_check(p, 0.5).check("relaxation_before_spike").pass);
}

TEST_CASE("membrane response with oscillating conductance", "[sc]")
{
    const SCParams p;
    const auto ts = simulate_sc_hh(p, 0.0, 2e-5);
    for (const char* ch : {"I_norm", "V_norm", "G_qp", "V", "I"}) {
        REQUIRE(ts.has(ch));
    }
    const double V0 = p.I0 / p.G0;
    for (std::size_t k = 0; k < ts.size(); ++k) {
        const double t = ts.time()[k];
        REQUIRE(ts["I_norm"][k] == Approx(std::sin(p.Omega * t)).margin(1e-15));
        REQUIRE(ts["V_norm"][k] * ts["G_qp"][k] == Approx(p.G0 * ts["I_norm"][k]).margin(1e-22));
        REQUIRE(ts["V"][k] == Approx(V0 * ts["V_norm"][k]).margin(1e-18));
    }
    CHECK(ts.time().back() == 2e-5);

    SCParams frozen = p;
    frozen.modulation = false;
    const auto f = simulate_sc_hh(frozen, 0.0, 2.0 * 2.0 * pi / p.Omega, 64);
    CHECK(f.size() == 129);
    for (std::size_t k = 0; k < f.size(); ++k) {
        REQUIRE(f["V_norm"][k] == Approx(2.0 * f["I_norm"][k]).margin(1e-15));
    }

    try {
        (void)simulate_sc_hh(p, 0.0, 1e-5, 19);
        FAIL("expected a resolution error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::resolution);
    }
    REQUIRE_THROWS_AS(simulate_sc_hh(p, 1e-3, 0.0), Error);
}

TEST_CASE("sc I-V trace is pinched", "[sc]")
{
    const SCParams p;
    const double T = 2.0 * pi / p.Omega;
    const auto ts = simulate_sc_hh(p, 0.0, 2.0 * T);
    const auto m = memristor::loop_metrics(ts.time(), ts["I_norm"], ts["V_norm"], T);
    CHECK(m.pinched);
    CHECK(m.pinch_distance < 1e-3);
}
