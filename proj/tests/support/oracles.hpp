#pragma once

// Independent reference solutions used by the unit and acceptance tests. Nothing here calls
// into the library; each oracle is a closed form or a plain-loop evaluation.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace hhq::test {

/// x(t) for dx/dt = alpha (1 - x) - beta x with constant rates.
inline double gate_exact(double x0, double alpha, double beta, double t)
{
    const double s = alpha + beta;
    const double xinf = alpha / s;
    return xinf + (x0 - xinf) * std::exp(-s * t);
}

/// V(t) for C dV/dt = I0 sin(W t) - g V, V(0) = V0: stationary part plus decaying transient.
inline double rc_response(double I0, double W, double C, double g, double V0, double t)
{
    const double den = g * g + C * C * W * W;
    const double stat = I0 * (g * std::sin(W * t) - W * C * std::cos(W * t)) / den;
    const double stat0 = -I0 * W * C / den;
    return stat + (V0 - stat0) * std::exp(-g * t / C);
}

/// Mean charge of q' = -phi/L - 2 gamma q, phi' = q/C from (q0, phi0); the damped oscillator
/// q'' + 2 gamma q' + q/(LC) = 0 with q'(0) = -phi0/L - 2 gamma q0.
inline double damped_charge(double q0, double phi0, double C, double L, double gamma, double t)
{
    const double w0sq = 1.0 / (L * C);
    const double dq0 = -phi0 / L - 2.0 * gamma * q0;
    const std::complex<double> wd = std::sqrt(std::complex<double>(w0sq - gamma * gamma, 0.0));
    // q = e^{-gamma t} (q0 cos(wd t) + (dq0 + gamma q0) sin(wd t)/wd), analytic through wd -> 0.
    const std::complex<double> c = std::cos(wd * t);
    const std::complex<double> s = std::abs(wd) > 1e-300 ? std::sin(wd * t) / wd : std::complex<double>(t, 0.0);
    return (std::exp(-gamma * t) * (q0 * c + (dq0 + gamma * q0) * s)).real();
}

/// Central-difference derivative of uniformly sampled data (interior points only).
inline std::vector<double> central_difference(std::span<const double> y, double dt)
{
    std::vector<double> d;
    if (y.size() < 3) {
        return d;
    }
    d.reserve(y.size() - 2);
    for (std::size_t k = 1; k + 1 < y.size(); ++k) {
        d.push_back((y[k + 1] - y[k - 1]) / (2.0 * dt));
    }
    return d;
}

inline double trapezoid(std::span<const double> x, std::span<const double> y)
{
    double s = 0.0;
    for (std::size_t k = 1; k < x.size(); ++k) {
        s += 0.5 * (x[k] - x[k - 1]) * (y[k] + y[k - 1]);
    }
    return s;
}

inline double max_abs(std::span<const double> y)
{
    double m = 0.0;
    for (double v : y) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

/// Per-window reduction of `y` over consecutive windows [k T, (k+1) T) of the time axis.
inline std::vector<double> per_window(std::span<const double> t, std::span<const double> y, double T,
                                      const std::function<double(std::span<const double>)>& reduce)
{
    std::vector<double> out;
    std::size_t begin = 0;
    const double t0 = t.empty() ? 0.0 : t.front();
    for (std::size_t w = 1;; ++w) {
        const double edge = t0 + static_cast<double>(w) * T;
        std::size_t end = begin;
        while (end < t.size() && t[end] < edge - 1e-12 * T) {
            ++end;
        }
        if (end >= t.size()) {
            break;  // incomplete final window
        }
        out.push_back(reduce(y.subspan(begin, end - begin)));
        begin = end;
    }
    return out;
}

inline double window_max(std::span<const double> y) { return *std::max_element(y.begin(), y.end()); }
inline double window_min(std::span<const double> y) { return *std::min_element(y.begin(), y.end()); }
inline double window_mean(std::span<const double> y)
{
    double s = 0.0;
    for (double v : y) {
        s += v;
    }
    return s / static_cast<double>(y.size());
}

/// Closest approach of the (x, y) polyline to the origin after scaling each axis by its max.
inline double polyline_origin_distance(std::span<const double> x, std::span<const double> y)
{
    const double sx = std::max(max_abs(x), 1e-300);
    const double sy = std::max(max_abs(y), 1e-300);
    double best = INFINITY;
    for (std::size_t k = 0; k + 1 < x.size(); ++k) {
        const double ax = x[k] / sx, ay = y[k] / sy;
        const double bx = x[k + 1] / sx, by = y[k + 1] / sy;
        const double dx = bx - ax, dy = by - ay;
        const double len2 = dx * dx + dy * dy;
        double u = len2 > 0.0 ? -(ax * dx + ay * dy) / len2 : 0.0;
        u = std::clamp(u, 0.0, 1.0);
        best = std::min(best, std::hypot(ax + u * dx, ay + u * dy));
    }
    return best;
}

} // namespace hhq::test
