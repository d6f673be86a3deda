#include "hhq/memristor/loop_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hhq/errors.hpp"

namespace hhq::memristor {

namespace {

std::vector<double> upward_crossings(std::span<const double> t, std::span<const double> v)
{
    std::vector<double> out;
    for (std::size_t k = 1; k < v.size(); ++k) {
        if (v[k - 1] < 0.0 && v[k] >= 0.0) {
            const double w = -v[k - 1] / (v[k] - v[k - 1]);
            out.push_back(t[k - 1] + w * (t[k] - t[k - 1]));
        }
    }
    return out;
}

double interpolate(std::span<const double> t, std::span<const double> y, double at)
{
    if (at <= t.front()) {
        return y.front();
    }
    if (at >= t.back()) {
        return y.back();
    }
    const auto it = std::upper_bound(t.begin(), t.end(), at);
    const auto hi = static_cast<std::size_t>(it - t.begin());
    const std::size_t lo = hi - 1;
    const double w = (at - t[lo]) / (t[hi] - t[lo]);
    return y[lo] + w * (y[hi] - y[lo]);
}

struct Polygon {
    std::vector<double> x;
    std::vector<double> y;
};

Polygon cycle_polygon(std::span<const double> t, std::span<const double> v, std::span<const double> i, double a,
                      double b)
{
    Polygon p;
    p.x.push_back(interpolate(t, v, a));
    p.y.push_back(interpolate(t, i, a));
    const auto first = std::upper_bound(t.begin(), t.end(), a);
    for (auto it = first; it != t.end() && *it < b; ++it) {
        const auto k = static_cast<std::size_t>(it - t.begin());
        p.x.push_back(v[k]);
        p.y.push_back(i[k]);
    }
    p.x.push_back(interpolate(t, v, b));
    p.y.push_back(interpolate(t, i, b));
    return p;
}

double max_abs(std::span<const double> x)
{
    double m = 0.0;
    for (double value : x) {
        m = std::max(m, std::abs(value));
    }
    return m;
}

double segment_origin_distance(double x0, double y0, double x1, double y1)
{
    const double dx = x1 - x0;
    const double dy = y1 - y0;
    const double len2 = dx * dx + dy * dy;
    double s = 0.0;
    if (len2 > 0.0) {
        s = std::clamp(-(x0 * dx + y0 * dy) / len2, 0.0, 1.0);
    }
    return std::hypot(x0 + s * dx, y0 + s * dy);
}

} // namespace

double pinch_distance(std::span<const double> v, std::span<const double> i)
{
    if (v.size() != i.size()) {
        throw Error(ErrorKind::parameter, "pinch distance needs equally long V and I columns");
    }
    const double v_scale = max_abs(v);
    const double i_scale = max_abs(i);
    auto vn = [&](std::size_t k) { return v_scale > 0.0 ? v[k] / v_scale : 0.0; };
    auto in = [&](std::size_t k) { return i_scale > 0.0 ? i[k] / i_scale : 0.0; };
    double d = v.size() == 1 ? std::hypot(vn(0), in(0)) : std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k < v.size(); ++k) {
        d = std::min(d, segment_origin_distance(vn(k - 1), in(k - 1), vn(k), in(k)));
    }
    return d;
}

double shoelace_area(std::span<const double> x, std::span<const double> y)
{
    const std::size_t n = x.size();
    if (n < 3) {
        return 0.0;
    }
    double twice = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t next = (k + 1) % n;
        twice += x[k] * y[next] - x[next] * y[k];
    }
    return 0.5 * twice;
}

std::optional<double> detect_period(std::span<const double> t, std::span<const double> v)
{
    const auto crossings = upward_crossings(t, v);
    if (crossings.size() < 3) {
        return std::nullopt;
    }
    return (crossings.back() - crossings.front()) / static_cast<double>(crossings.size() - 1);
}

LoopMetrics loop_metrics(std::span<const double> t, std::span<const double> v, std::span<const double> i,
                         std::optional<double> period, const LoopOptions& options)
{
    if (t.size() != v.size() || t.size() != i.size()) {
        throw Error(ErrorKind::parameter, "loop metrics need equally long t, V and I columns");
    }
    if (t.size() < 3) {
        throw Error(ErrorKind::insufficient_data, "loop metrics need at least two drive cycles of samples");
    }

    std::vector<double> boundaries;
    const double span_eps = 1e-9 * (t.back() - t.front());
    if (period) {
        if (!(*period > 0.0)) {
            throw Error(ErrorKind::parameter, "drive period must be positive");
        }
        for (double b = t.front(); b <= t.back() + span_eps; b = t.front() + static_cast<double>(boundaries.size()) * *period) {
            boundaries.push_back(b);
        }
    } else {
        boundaries = upward_crossings(t, v);
    }
    if (boundaries.size() < 3) {
        throw Error(ErrorKind::insufficient_data, "trace covers fewer than two complete cycles");
    }

    LoopMetrics m;
    m.period = period ? *period : (boundaries.back() - boundaries.front()) / static_cast<double>(boundaries.size() - 1);
    for (std::size_t c = 0; c + 1 < boundaries.size(); ++c) {
        const double b = std::min(boundaries[c + 1], t.back());
        const Polygon p = cycle_polygon(t, v, i, boundaries[c], b);
        m.cycle_starts.push_back(boundaries[c]);
        m.cycle_areas.push_back(shoelace_area(p.x, p.y));
    }
    m.area = m.cycle_areas.back();
    m.abs_area = std::abs(m.area);

    const double v_scale = max_abs(v);
    const double i_scale = max_abs(i);
    auto vn = [&](std::size_t k) { return v_scale > 0.0 ? v[k] / v_scale : 0.0; };
    auto in = [&](std::size_t k) { return i_scale > 0.0 ? i[k] / i_scale : 0.0; };

    m.pinch_distance = pinch_distance(v, i);
    m.pinched = m.pinch_distance < options.pinch_tolerance;

    // Lobes: zero crossings of V inside the final cycle that pass through the pinch point.
    int through_origin = 0;
    const double last_start = m.cycle_starts.back();
    for (std::size_t k = 1; k < t.size(); ++k) {
        if (t[k] <= last_start || t[k - 1] >= boundaries.back()) {
            continue;
        }
        const bool crosses = (v[k - 1] < 0.0 && v[k] >= 0.0) || (v[k - 1] > 0.0 && v[k] <= 0.0);
        if (crosses && segment_origin_distance(vn(k - 1), in(k - 1), vn(k), in(k)) < options.pinch_tolerance) {
            ++through_origin;
        }
    }
    m.lobes = std::max(1, through_origin);
    return m;
}

} // namespace hhq::memristor
