#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace hhq::detail {

template <std::size_t N>
using State = std::array<double, N>;

template <std::size_t N>
inline State<N> axpy(const State<N>& y, double h, const State<N>& k)
{
    State<N> out;
    for (std::size_t i = 0; i < N; ++i) {
        out[i] = y[i] + h * k[i];
    }
    return out;
}

/// Classical fourth-order Runge-Kutta step of y' = f(t, y).
template <std::size_t N, class F>
State<N> rk4_step(F&& f, double t, const State<N>& y, double h)
{
    const State<N> k1 = f(t, y);
    const State<N> k2 = f(t + 0.5 * h, axpy(y, 0.5 * h, k1));
    const State<N> k3 = f(t + 0.5 * h, axpy(y, 0.5 * h, k2));
    const State<N> k4 = f(t + h, axpy(y, h, k3));
    State<N> out;
    for (std::size_t i = 0; i < N; ++i) {
        out[i] = y[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return out;
}

template <std::size_t N, class F>
State<N> euler_step(F&& f, double t, const State<N>& y, double h)
{
    return axpy(y, h, f(t, y));
}

template <std::size_t N>
bool all_finite(const State<N>& y)
{
    for (double v : y) {
        if (!std::isfinite(v)) {
            return false;
        }
    }
    return true;
}

} // namespace hhq::detail
