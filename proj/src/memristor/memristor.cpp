#include "hhq/memristor/memristor.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hhq/detail/ode.hpp"
#include "hhq/errors.hpp"

namespace hhq::memristor {

double memristor_current(const MemristiveSystem& sys, double voltage)
{
    const double g = sys.conductance(sys.mu);
    if (g < 0.0) {
        std::ostringstream msg;
        msg << "negative conductance G(" << sys.mu << ") = " << g << " violates passivity";
        throw Error(ErrorKind::axiom_violation, msg.str());
    }
    if (voltage == 0.0) {
        return 0.0;
    }
    return g * voltage;
}

double state_step(const MemristiveSystem& sys, double voltage, double dt)
{
    if (!(dt > 0.0)) {
        throw Error(ErrorKind::parameter, "state step needs dt > 0");
    }
    if (voltage == 0.0) {
        return sys.mu;
    }
    auto f = [&](double, const detail::State<1>& y) { return detail::State<1>{sys.rate(y[0], voltage)}; };
    const double next = detail::rk4_step(f, 0.0, detail::State<1>{sys.mu}, dt)[0];
    if (!std::isfinite(next)) {
        throw Error(ErrorKind::integration, "memristor state rate is non-finite");
    }
    return next;
}

AxiomReport check_axioms(const MemristiveSystem& sys, std::span<const double> states,
                         std::span<const double> voltages)
{
    AxiomReport report;
    std::ostringstream detail;
    for (double mu : states) {
        const double g = sys.conductance(mu);
        if (g < 0.0 && report.passive) {
            report.passive = false;
            detail << "G(" << mu << ") = " << g << " < 0; ";
        }
        const double f0 = sys.rate(mu, 0.0);
        if (f0 != 0.0 && report.static_at_zero) {
            report.static_at_zero = false;
            detail << "f(" << mu << ", 0) = " << f0 << " != 0; ";
        }
        bool rising = true;
        bool falling = true;
        double prev = 0.0;
        for (std::size_t i = 0; i < voltages.size(); ++i) {
            const double fv = sys.rate(mu, voltages[i]);
            if (i > 0) {
                rising = rising && fv >= prev;
                falling = falling && fv <= prev;
            }
            prev = fv;
        }
        if (!rising && !falling && report.monotone) {
            report.monotone = false;
            detail << "f(" << mu << ", V) not monotone in V; ";
        }
    }
    report.detail = detail.str();
    return report;
}

MemristiveSystem gate_memristor(double mu0, std::function<double(double)> alpha,
                                std::function<double(double)> beta, std::function<double(double)> conductance)
{
    MemristiveSystem sys;
    sys.mu = mu0;
    sys.conductance = std::move(conductance);
    sys.rate = [alpha = std::move(alpha), beta = std::move(beta)](double mu, double v) {
        return hh::gate_derivative(mu, alpha(v), beta(v));
    };
    return sys;
}

MemristiveSystem potassium_channel(double n0, double gK_max, const hh::RateFunctions& rates)
{
    return gate_memristor(n0, rates.alpha_n, rates.beta_n, [gK_max](double n) { return gK_max * std::pow(n, 4); });
}

MemristiveSystem rectified_gate_memristor(double mu0, double k, std::function<double(double)> conductance)
{
    return gate_memristor(
        mu0, [k](double v) { return k * std::max(v, 0.0); }, [k](double v) { return k * std::max(-v, 0.0); },
        std::move(conductance));
}

} // namespace hhq::memristor
