#pragma once

#include <optional>
#include <span>
#include <vector>

namespace hhq::memristor {

struct LoopOptions {
    /// Pinch threshold in max-normalized (V, I) coordinates.
    double pinch_tolerance = 1e-3;
};

/// Hysteresis-loop summary of an (V, I) trace.
///
/// Areas use the shoelace rule over each cycle in the (V, I) plane; counterclockwise
/// traversal is positive. `area` refers to the final complete cycle.
struct LoopMetrics {
    double area = 0.0;
    double abs_area = 0.0;
    bool pinched = false;
    double pinch_distance = 0.0;  ///< closest approach of the trace polyline to (0, 0), normalized
    int lobes = 1;
    double period = 0.0;
    std::vector<double> cycle_starts;
    std::vector<double> cycle_areas;
};

/// Segments the trace into cycles (by `period` when given, else by upward zero crossings of V)
/// and measures each. Throws Error(insufficient_data) for fewer than two complete cycles.
LoopMetrics loop_metrics(std::span<const double> t, std::span<const double> v, std::span<const double> i,
                         std::optional<double> period = std::nullopt, const LoopOptions& options = {});

/// Closest approach of the (v, i) polyline to the origin, each axis scaled by its max |value|.
double pinch_distance(std::span<const double> v, std::span<const double> i);

/// Signed shoelace area of the closed polygon through (x[k], y[k]).
double shoelace_area(std::span<const double> x, std::span<const double> y);

/// Period from upward zero crossings of `v`; nullopt with fewer than three crossings.
std::optional<double> detect_period(std::span<const double> t, std::span<const double> v);

} // namespace hhq::memristor
