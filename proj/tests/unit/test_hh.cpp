#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "hhq/drive.hpp"
#include "hhq/errors.hpp"
#include "hhq/hh/classical.hpp"
#include "hhq/hh/rates.hpp"
#include "support/oracles.hpp"

using namespace hhq;
using Catch::Approx;

namespace {

// Rates written out directly in mV and 1/ms, independent of the library's scaling.
double alpha_n_ms(double mv) { return 0.01 * (10.0 - mv) / (std::exp((10.0 - mv) / 10.0) - 1.0); }
double beta_n_ms(double mv) { return 0.125 * std::exp(-mv / 80.0); }
double alpha_m_ms(double mv) { return 0.1 * (25.0 - mv) / (std::exp((25.0 - mv) / 10.0) - 1.0); }
double beta_m_ms(double mv) { return 4.0 * std::exp(-mv / 18.0); }
double alpha_h_ms(double mv) { return 0.07 * std::exp(-mv / 20.0); }
double beta_h_ms(double mv) { return 1.0 / (std::exp((30.0 - mv) / 10.0) + 1.0); }

hh::RateFunctions frozen_rates()
{
    hh::RateFunctions r = hh::RateFunctions::hodgkin_huxley_1952();
    r.alpha_n = [](double) { return 0.0; };
    r.beta_n = [](double) { return 0.0; };
    return r;
}

} // namespace

TEST_CASE("1952 rates in SI units", "[hh][rates]")
{
    const auto r = hh::RateFunctions::hodgkin_huxley_1952();
    for (double mv : {-40.0, -12.5, 0.0, 3.0, 27.0, 60.0, 100.0}) {
        const auto g = hh::eval_rates(r, mv * 1e-3);
        CHECK(g.alpha_n == Approx(1e3 * alpha_n_ms(mv)).epsilon(1e-12));
        CHECK(g.beta_n == Approx(1e3 * beta_n_ms(mv)).epsilon(1e-12));
        CHECK(g.alpha_m == Approx(1e3 * alpha_m_ms(mv)).epsilon(1e-12));
        CHECK(g.beta_m == Approx(1e3 * beta_m_ms(mv)).epsilon(1e-12));
        CHECK(g.alpha_h == Approx(1e3 * alpha_h_ms(mv)).epsilon(1e-12));
        CHECK(g.beta_h == Approx(1e3 * beta_h_ms(mv)).epsilon(1e-12));
    }
}

TEST_CASE("removable singularities are continuous", "[hh][rates]")
{
    const auto r = hh::RateFunctions::hodgkin_huxley_1952();
    // 0.01 (10 - V) / (e^{(10-V)/10} - 1) -> 0.1 / ms at V = 10 mV; alpha_m -> 1 / ms at 25 mV.
    CHECK(r.alpha_n(10e-3) == Approx(100.0).epsilon(1e-12));
    CHECK(r.alpha_m(25e-3) == Approx(1000.0).epsilon(1e-12));
    for (double d : {1e-9, 1e-7, 1e-5}) {
        CHECK(r.alpha_n(10e-3 + d) == Approx(r.alpha_n(10e-3)).epsilon(0.1 * d / 1e-3 + 1e-12));
        CHECK(r.alpha_n(10e-3 - d) == Approx(r.alpha_n(10e-3)).epsilon(0.1 * d / 1e-3 + 1e-12));
    }
    CHECK(hh::exprel_inverse(0.0) == 1.0);
    CHECK(hh::exprel_inverse(1e-3) == Approx(1e-3 / std::expm1(1e-3)).epsilon(1e-14));
    REQUIRE_THROWS_AS(hh::eval_rates(r, NAN), Error);
}

TEST_CASE("resting gate values", "[hh][rates]")
{
    const auto r = hh::RateFunctions::hodgkin_huxley_1952();
    CHECK(hh::n_infinity(r, 0.0) == Approx(alpha_n_ms(0) / (alpha_n_ms(0) + beta_n_ms(0))).epsilon(1e-12));
    CHECK(hh::n_infinity(r, 0.0) == Approx(0.3177).margin(1e-4));
    CHECK(hh::m_infinity(r, 0.0) == Approx(0.0529).margin(1e-4));
    CHECK(hh::h_infinity(r, 0.0) == Approx(0.5961).margin(1e-4));
    REQUIRE_THROWS_AS(hh::gate_steady_state(0.0, 0.0), Error);
}

TEST_CASE("gate step against the exponential solution", "[hh]")
{
    const double alpha = 300.0, beta = 120.0, x0 = 0.1;
    for (double dt : {1e-5, 1e-4, 1e-3}) {
        const double exact = test::gate_exact(x0, alpha, beta, dt);
        const double s = (alpha + beta) * dt;
        CHECK(std::abs(hh::gate_step(x0, alpha, beta, dt) - exact) <= std::pow(s, 5) / 100.0 + 1e-15);
        CHECK(std::abs(hh::gate_step(x0, alpha, beta, dt, hh::Scheme::euler) - exact) <= s * s);
    }
    // Fixed point stays put.
    CHECK(hh::gate_step(alpha / (alpha + beta), alpha, beta, 1e-3) == Approx(alpha / (alpha + beta)).epsilon(1e-15));
}

TEST_CASE("step count covers the span", "[hh]")
{
    CHECK(hh::step_count({0.0, 1.0}, 0.1) == 10);
    CHECK(hh::step_count({0.0, 1.0}, 0.3) == 4);
    CHECK(hh::step_count({2.0, 3.0}, 1e-3) == 1000);
}

TEST_CASE("parameters scale with membrane area", "[hh]")
{
    const auto p = hh::HHParams::standard(2.5);
    CHECK(p.Cg == Approx(2.5e-6));
    CHECK(p.gK_max == Approx(90e-3));
    CHECK(p.gNa_max == Approx(300e-3));
    CHECK(p.gL == Approx(0.75e-3));
    REQUIRE_THROWS_AS(hh::HHParams::standard(0.0), Error);

    hh::HHParams bad;
    bad.Cg = 0.0;
    REQUIRE_THROWS_AS(bad.validate(), Error);
    bad = {};
    bad.gK_max = -1.0;
    REQUIRE_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("single channel rejects bad settings", "[hh]")
{
    const auto drive = Drive::sinusoid(1e-6, 1e3);
    const hh::HHParams p;
    REQUIRE_THROWS_AS(hh::simulate_single_channel(p, drive, {}, {0.0, 1e-3}, {0.0}), Error);
    REQUIRE_THROWS_AS(hh::simulate_single_channel(p, drive, {}, {1e-3, 0.0}, {1e-5}), Error);
    REQUIRE_THROWS_AS(hh::simulate_single_channel(p, drive, {0.0, 1.5}, {0.0, 1e-3}, {1e-5}), Error);
}

TEST_CASE("single channel at rest stays at rest", "[hh]")
{
    const auto ts = hh::simulate_single_channel({}, Drive::sinusoid(0.0, 1e3), {}, {0.0, 0.02}, {1e-5});
    CHECK(test::max_abs(ts["V"]) == 0.0);
    const auto r = hh::RateFunctions::hodgkin_huxley_1952();
    for (double n : ts["n"]) {
        REQUIRE(n == Approx(hh::n_infinity(r, 0.0)).epsilon(1e-12));
    }
}

TEST_CASE("frozen gate reduces to a driven RC membrane", "[hh]")
{
    const hh::HHParams p;
    const double I0 = 5e-6, W = 2000.0, n0 = 0.4;
    const double g = p.gK_max * std::pow(n0, 4);
    const auto ts = hh::simulate_single_channel(p, Drive::sinusoid(I0, W), {0.0, n0}, {0.0, 0.02}, {1e-6},
                                                frozen_rates());
    const auto t = ts.time();
    const auto V = ts["V"];
    double err = 0.0;
    for (std::size_t k = 0; k < t.size(); ++k) {
        err = std::max(err, std::abs(V[k] - test::rc_response(I0, W, p.Cg, g, 0.0, t[k])));
    }
    CHECK(err < 1e-9 * test::max_abs(V));

    // No conductance at all: V = I0 (1 - cos W t) / (Cg W), a pure positive offset.
    hh::HHParams open = p;
    open.gK_max = 0.0;
    const auto ts0 = hh::simulate_single_channel(open, Drive::sinusoid(I0, W), {}, {0.0, 0.01}, {1e-6});
    for (std::size_t k = 0; k < ts0.size(); k += 97) {
        const double tk = ts0.time()[k];
        REQUIRE(ts0["V"][k] == Approx(I0 * (1.0 - std::cos(W * tk)) / (p.Cg * W)).margin(1e-12));
    }
}

TEST_CASE("single channel trace satisfies its ODE", "[hh]")
{
    const hh::HHParams p;
    const double dt = 1e-6;
    const auto ts = hh::simulate_single_channel(p, Drive::sinusoid(40e-6, 3000.0), {}, {0.0, 0.01}, {dt});
    const auto V = ts["V"];
    const auto gK = ts["gK"];
    const auto I = ts["I"];
    const auto dV = test::central_difference(V, dt);
    const double scale = test::max_abs(I);
    double worst = 0.0;
    for (std::size_t k = 1; k + 1 < V.size(); ++k) {
        const double residual = p.Cg * dV[k - 1] - (I[k] - gK[k] * (V[k] - p.VK));
        worst = std::max(worst, std::abs(residual) / scale);
    }
    CHECK(worst < 1e-4);

    // Imem is the potassium branch current.
    for (std::size_t k = 0; k < V.size(); k += 101) {
        REQUIRE(ts["Imem"][k] == Approx(gK[k] * V[k]).margin(1e-18));
    }
}

TEST_CASE("full model collapses to the single channel without Na and leak", "[hh]")
{
    hh::HHParams p;
    p.gNa_max = 0.0;
    p.gL = 0.0;
    const auto drive = Drive::sinusoid(20e-6, 2000.0);
    const auto a = hh::simulate_single_channel(p, drive, {}, {0.0, 0.01}, {1e-5});
    const auto b = hh::simulate_full_hh(p, drive, {}, {0.0, 0.01}, {1e-5});
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        REQUIRE(a["V"][k] == Approx(b["V"][k]).margin(1e-15));
        REQUIRE(a["n"][k] == Approx(b["n"][k]).margin(1e-15));
    }
}

TEST_CASE("full model rests near 0 V and fires under strong drive", "[hh]")
{
    // The leak potential balances the resting currents for the squid-axon VK = -12 mV.
    hh::HHParams p;
    p.VK = -12e-3;
    const auto rest = hh::simulate_full_hh(p, Drive::sinusoid(0.0, 1e3), {}, {0.0, 0.02}, {1e-5});
    CHECK(test::max_abs(rest["V"]) < 1e-4);

    const auto fire = hh::simulate_full_hh(p, Drive::sinusoid(50e-6, 300.0), {}, {0.0, 0.01}, {1e-5});  // depolarizing half-cycle
    CHECK(test::window_max(fire["V"]) > 80e-3);  // action potential overshoot towards VNa
    for (const char* gate : {"n", "m", "h"}) {
        CHECK(test::window_min(fire[gate]) >= 0.0);
        CHECK(test::window_max(fire[gate]) <= 1.0);
    }
}

TEST_CASE("adiabatic voltage is the stationary RC response", "[hh]")
{
    const double I0 = 3e-6, W = 1500.0, g = 2e-4, C = 1e-6;
    for (double t : {0.0, 1e-4, 3.3e-3, 0.1}) {
        const double stationary = test::rc_response(I0, W, C, g, 0.0, t) -
                                  (0.0 + I0 * W * C / (g * g + C * C * W * W)) * std::exp(-g * t / C);
        CHECK(hh::adiabatic_voltage(I0, W, g, C, 0.0, t) == Approx(stationary).margin(1e-15));
    }
    CHECK(hh::adiabatic_voltage(I0, W, g, C, 0.02, 0.0) == Approx(0.02 - I0 * W * C / (g * g + C * C * W * W)));
    REQUIRE_THROWS_AS(hh::adiabatic_voltage(I0, 0.0, 0.0, C, 0.0, 0.0), Error);
}

TEST_CASE("adiabatic run with frozen gate follows the stationary response", "[hh]")
{
    const hh::HHParams p;
    const double I0 = 5e-6, W = 2000.0, n0 = 0.35;
    const auto ts = hh::simulate_single_channel_adiabatic(p, Drive::sinusoid(I0, W), n0, {0.0, 0.01}, {1e-5},
                                                          frozen_rates());
    const double g = p.gK_max * std::pow(n0, 4);
    for (std::size_t k = 0; k < ts.size(); k += 50) {
        REQUIRE(ts["V"][k] == Approx(hh::adiabatic_voltage(I0, W, g, p.Cg, 0.0, ts.time()[k])).margin(1e-15));
    }
    REQUIRE_THROWS_AS(hh::simulate_single_channel_adiabatic(p, Drive::sampled({0.0, 1.0}, {0.0, 1.0}), n0,
                                                            {0.0, 0.01}, {1e-5}),
                      Error);
}

TEST_CASE("non-finite state raises an integration error", "[hh]")
{
    REQUIRE_THROWS_AS(hh::simulate_single_channel({}, Drive::sinusoid(1e300, 1e3), {}, {0.0, 1e-2}, {1e-3}),
                      IntegrationError);
}

TEST_CASE("drives", "[drive]")
{
    const auto s = Drive::sinusoid(2.0, 3.0);
    CHECK(s(0.5) == Approx(2.0 * std::sin(1.5)));
    CHECK(s.period() == Approx(2.0 * std::numbers::pi / 3.0));
    const auto d = Drive::sampled({0.0, 1.0, 3.0}, {0.0, 2.0, -2.0});
    CHECK(d(0.5) == Approx(1.0));
    CHECK(d(2.0) == Approx(0.0));
    CHECK(d(-1.0) == 0.0);
    CHECK(d(10.0) == -2.0);
    REQUIRE_THROWS_AS(d.period(), Error);
    REQUIRE_THROWS_AS(Drive::sinusoid(1.0, 0.0).period(), Error);
}
