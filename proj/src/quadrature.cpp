#include "hhq/quadrature.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "hhq/errors.hpp"

namespace hhq::quad {

namespace {

constexpr std::array<double, 8> kronrod_nodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};

constexpr std::array<double, 8> kronrod_weights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};

// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5, 7).
constexpr std::array<double, 4> gauss_weights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

struct Interval {
    double a;
    double b;
    double value;
    double error;
    bool operator<(const Interval& other) const { return error < other.error; }
};

} // namespace

Result kronrod15(const std::function<double(double)>& f, double a, double b)
{
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double fc = f(center);
    double kronrod = fc * kronrod_weights[7];
    double gauss = fc * gauss_weights[3];

    for (int j = 0; j < 7; ++j) {
        const double dx = half * kronrod_nodes[j];
        const double sum = f(center - dx) + f(center + dx);
        kronrod += kronrod_weights[j] * sum;
        if (j % 2 == 1) {
            gauss += gauss_weights[j / 2] * sum;
        }
    }

    Result r;
    r.value = kronrod * half;
    r.error_estimate = std::abs((kronrod - gauss) * half);
    r.intervals = 1;
    return r;
}

Result integrate(const std::function<double(double)>& f, double a, double b, const Options& options)
{
    if (!std::isfinite(a) || !std::isfinite(b)) {
        throw Error(ErrorKind::parameter, "integration limits must be finite");
    }
    if (a == b) {
        return {};
    }

    std::priority_queue<Interval> heap;
    const Result first = kronrod15(f, a, b);
    heap.push({a, b, first.value, first.error_estimate});
    double total = first.value;
    double total_error = first.error_estimate;

    const double eps = std::numeric_limits<double>::epsilon();
    int intervals = 1;
    while (true) {
        if (!std::isfinite(total)) {
            throw Error(ErrorKind::quadrature, "integrand produced a non-finite value");
        }
        const double target = std::max(options.abs_tol, options.rel_tol * std::abs(total));
        if (total_error <= target) {
            break;
        }
        if (intervals >= options.max_intervals) {
            throw Error(ErrorKind::quadrature,
                        "adaptive quadrature did not converge within " + std::to_string(options.max_intervals)
                            + " intervals (error estimate " + std::to_string(total_error) + ")");
        }

        const Interval worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (std::abs(worst.b - worst.a) <= 4.0 * eps * std::max(std::abs(worst.a), std::abs(worst.b))) {
            // Roundoff floor: the remaining estimate is noise, accept it.
            break;
        }
        heap.pop();
        const Result left = kronrod15(f, worst.a, mid);
        const Result right = kronrod15(f, mid, worst.b);
        heap.push({worst.a, mid, left.value, left.error_estimate});
        heap.push({mid, worst.b, right.value, right.error_estimate});
        total += left.value + right.value - worst.value;
        total_error += left.error_estimate + right.error_estimate - worst.error;
        ++intervals;
    }

    // Re-sum from scratch; the running total accumulates cancellation error.
    Result r;
    r.intervals = intervals;
    while (!heap.empty()) {
        r.value += heap.top().value;
        r.error_estimate += heap.top().error;
        heap.pop();
    }
    return r;
}

} // namespace hhq::quad
