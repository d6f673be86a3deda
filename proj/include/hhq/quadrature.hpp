#pragma once

#include <functional>

namespace hhq::quad {

struct Options {
    double rel_tol = 1e-9;
    double abs_tol = 0.0;
    int max_intervals = 4000;
};

struct Result {
    double value = 0.0;
    double error_estimate = 0.0;
    int intervals = 0;
};

/// Globally adaptive 7/15-point Gauss-Kronrod quadrature over the finite interval [a, b].
/// The interval with the largest error estimate is bisected until the summed estimate drops
/// below max(abs_tol, rel_tol * |value|). Throws Error(quadrature) when the budget runs out.
Result integrate(const std::function<double(double)>& f, double a, double b, const Options& options = {});

/// One fixed 15-point Kronrod evaluation; exposed for tests and for cheap smooth integrands.
Result kronrod15(const std::function<double(double)>& f, double a, double b);

} // namespace hhq::quad
