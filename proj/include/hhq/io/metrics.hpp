#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "hhq/memristor/loop_metrics.hpp"
#include "hhq/sc/feasibility.hpp"
#include "hhq/time_series.hpp"

namespace hhq::io {

struct LimitCycle {
    bool detected = false;
    double period = 0.0;
    double area = 0.0;
};

struct Provenance {
    std::string config_hash;  ///< FNV-1a of the scenario text, hex
    std::uint64_t seed = 0;
    std::string version;
    std::string model;
};

struct MetricsReport {
    std::optional<memristor::LoopMetrics> loop;
    std::string loop_x;  ///< channel on the horizontal axis of the loop
    std::string loop_y;
    std::optional<double> saturation_time;
    LimitCycle limit_cycle;
    std::optional<sc::RegimeReport> regime;
    Provenance provenance;
    std::map<std::string, double> values;        ///< model-specific scalars
    std::map<std::string, std::string> metadata;  ///< copied from the trace
};

/// Start of the first cycle after which every cycle area stays within `rel` of the final one
/// (plus an absolute floor of 1e-12 times the larger of the biggest cycle area and `area_scale`,
/// so that cancelling figure-eight areas saturate at once). Needs the last two cycles to agree;
/// otherwise nullopt.
std::optional<double> saturation_time(const memristor::LoopMetrics& loop, double rel = 0.01,
                                      double area_scale = 0.0);

/// Loop axes for a trace: (V, Imem) for memristive channels, (I_norm, V_norm) for the
/// superconducting model. Throws Error(parameter) if neither pair is present.
std::pair<std::string, std::string> default_loop_channels(const TimeSeries& ts);

/// Loop metrics, saturation and limit cycle for the (x, y) channels of a trace.
/// Throws Error(insufficient_data) when the trace holds fewer than two cycles.
MetricsReport compute_metrics(const TimeSeries& ts, std::optional<double> period, const std::string& x,
                              const std::string& y, const memristor::LoopOptions& options = {});

/// Pretty-printed JSON with sorted keys and a trailing newline.
std::string to_json(const MetricsReport& report);

} // namespace hhq::io
