#include "hhq/io/metrics.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "hhq/errors.hpp"

namespace hhq::io {

std::optional<double> saturation_time(const memristor::LoopMetrics& loop, double rel, double area_scale)
{
    const auto& a = loop.cycle_areas;
    if (a.size() < 2) {
        return std::nullopt;
    }
    double scale = 0.0;
    for (double v : a) {
        scale = std::max(scale, std::abs(v));
    }
    const double final_area = a.back();
    const double tol = rel * std::abs(final_area) + 1e-12 * std::max(scale, area_scale) + 1e-300;
    std::size_t first = a.size() - 1;
    while (first > 0 && std::abs(a[first - 1] - final_area) <= tol) {
        --first;
    }
    if (first + 1 >= a.size()) {
        return std::nullopt;
    }
    return loop.cycle_starts[first];
}

std::pair<std::string, std::string> default_loop_channels(const TimeSeries& ts)
{
    if (ts.has("V") && ts.has("Imem")) {
        return {"V", "Imem"};
    }
    if (ts.has("I_norm") && ts.has("V_norm")) {
        return {"I_norm", "V_norm"};
    }
    throw Error(ErrorKind::parameter, "trace has no memristive I-V channel pair (V, Imem) or (I_norm, V_norm)");
}

MetricsReport compute_metrics(const TimeSeries& ts, std::optional<double> period, const std::string& x,
                              const std::string& y, const memristor::LoopOptions& options)
{
    MetricsReport report;
    report.loop_x = x;
    report.loop_y = y;
    report.loop = memristor::loop_metrics(ts.time(), ts[x], ts[y], period, options);
    double xmax = 0.0, ymax = 0.0;
    for (double v : ts[x]) {
        xmax = std::max(xmax, std::abs(v));
    }
    for (double v : ts[y]) {
        ymax = std::max(ymax, std::abs(v));
    }
    report.saturation_time = saturation_time(*report.loop, 0.01, xmax * ymax);
    report.limit_cycle.detected = report.saturation_time.has_value();
    report.limit_cycle.period = report.loop->period;
    report.limit_cycle.area = report.loop->area;
    report.metadata = ts.metadata;
    return report;
}

namespace {

nlohmann::json number_or_null(std::optional<double> v)
{
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

} // namespace

std::string to_json(const MetricsReport& r)
{
    using nlohmann::json;
    json j = json::object();

    if (r.loop) {
        const auto& l = *r.loop;
        j["loop"] = {
            {"x", r.loop_x},
            {"y", r.loop_y},
            {"area", l.area},
            {"abs_area", l.abs_area},
            {"pinched", l.pinched},
            {"pinch_distance", l.pinch_distance},
            {"lobes", l.lobes},
            {"period", l.period},
            {"cycle_starts", l.cycle_starts},
            {"cycle_areas", l.cycle_areas},
        };
    } else {
        j["loop"] = nullptr;
    }
    j["saturation_time"] = number_or_null(r.saturation_time);
    j["limit_cycle"] = {
        {"detected", r.limit_cycle.detected},
        {"period", r.limit_cycle.period},
        {"area", r.limit_cycle.area},
    };
    if (r.regime) {
        json checks = json::array();
        for (const auto& c : r.regime->checks) {
            checks.push_back({{"name", c.name},
                              {"relation", c.relation},
                              {"ratio", c.ratio},
                              {"threshold", c.threshold},
                              {"pass", c.pass}});
        }
        j["regime"] = {
            {"pass", r.regime->pass()},
            {"checks", checks},
            {"g0", r.regime->g0},
            {"omega10", r.regime->omega10},
            {"G0", r.regime->G0},
            {"G0_formula", r.regime->G0_formula},
        };
    }
    j["provenance"] = {
        {"config_hash", r.provenance.config_hash},
        {"seed", r.provenance.seed},
        {"version", r.provenance.version},
        {"model", r.provenance.model},
    };
    if (!r.values.empty()) {
        j["values"] = r.values;
    }
    if (!r.metadata.empty()) {
        j["metadata"] = r.metadata;
    }
    return j.dump(2) + "\n";
}

} // namespace hhq::io
