#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>

#include "hhq/io/metrics.hpp"
#include "hhq/io/scenario.hpp"
#include "hhq/sc/feasibility.hpp"
#include "hhq/time_series.hpp"

namespace hhq::io {

struct RunOptions {
    std::filesystem::path out_dir;            ///< empty: default_out_dir()
    std::optional<std::uint64_t> seed;        ///< overrides the scenario seed
    std::filesystem::path scenario_dir;       ///< base for relative drive sample files
    bool write_files = true;
};

struct RunResult {
    TimeSeries trace;
    MetricsReport metrics;
    std::filesystem::path csv_path;
    std::filesystem::path json_path;
};

/// $HHQ_OUT_DIR when set and non-empty, else the current directory.
std::filesystem::path default_out_dir();

/// Simulates the scenario, writes the CSV trace and JSON metrics, and returns both.
/// Module errors are re-raised with the scenario name attached; their kind is preserved.
RunResult run_scenario(const ScenarioConfig& config, const RunOptions& options = {});

/// Regime report for an sc-feasibility scenario. Throws Error(parameter) for other models.
sc::RegimeReport check_regime(const ScenarioConfig& config);

} // namespace hhq::io
