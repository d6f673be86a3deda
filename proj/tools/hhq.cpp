// hhq: run scenarios, measure hysteresis loops, check superconducting regimes.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hhq/errors.hpp"
#include "hhq/io/csv.hpp"
#include "hhq/io/metrics.hpp"
#include "hhq/io/runner.hpp"
#include "hhq/io/scenario.hpp"

namespace {

int cmd_run(const std::string& file, const std::string& out_dir, std::optional<std::uint64_t> seed)
{
    const auto cfg = hhq::io::load_scenario(file);
    hhq::io::RunOptions opts;
    opts.out_dir = out_dir;
    opts.seed = seed;
    opts.scenario_dir = std::filesystem::path(file).parent_path();
    const auto result = hhq::io::run_scenario(cfg, opts);
    std::printf("wrote %s\nwrote %s\n", result.csv_path.string().c_str(), result.json_path.string().c_str());
    return 0;
}

int cmd_metrics(const std::string& csv, double period, const std::string& x, const std::string& y)
{
    const auto ts = hhq::io::read_csv_file(csv);
    auto axes = hhq::io::default_loop_channels(ts);
    if (!x.empty()) {
        axes.first = x;
    }
    if (!y.empty()) {
        axes.second = y;
    }
    hhq::io::MetricsReport report = hhq::io::compute_metrics(ts, period, axes.first, axes.second);
    report.provenance.version = HHQ_VERSION;
    std::fputs(hhq::io::to_json(report).c_str(), stdout);
    return 0;
}

int cmd_check_regime(const std::string& file)
{
    const auto report = hhq::io::check_regime(hhq::io::load_scenario(file));
    for (const auto& c : report.checks) {
        std::printf("%-32s %-26s ratio %.6g (limit %.3g)  %s\n", c.name.c_str(), c.relation.c_str(), c.ratio,
                    c.threshold, c.pass ? "ok" : "VIOLATED");
    }
    std::printf("g0 = %.6g, omega10 = %.6g rad/s, G0 = %.6g S (formula estimate %.6g S)\n", report.g0,
                report.omega10, report.G0, report.G0_formula);
    std::printf("verdict: %s\n", report.pass() ? "pass" : "fail");
    return report.pass() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Hodgkin-Huxley memristor simulator"};
    app.set_version_flag("--version", HHQ_VERSION);
    app.require_subcommand(1);

    std::string scenario;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    auto* run = app.add_subcommand("run", "Simulate a scenario and write its CSV trace and JSON metrics");
    run->add_option("scenario", scenario, "Scenario file")->required();
    run->add_option("--out-dir", out_dir, "Output directory (default: $HHQ_OUT_DIR or .)");
    run->add_option("--seed", seed, "Override the scenario seed");

    std::string csv;
    double period = 0.0;
    std::string x_channel, y_channel;
    auto* metrics = app.add_subcommand("metrics", "Loop metrics of a CSV trace");
    metrics->add_option("csv", csv, "Trace written by 'hhq run'")->required();
    metrics->add_option("--period", period, "Drive period in seconds")->required()->check(CLI::PositiveNumber);
    metrics->add_option("--x", x_channel, "Horizontal loop channel (default V or I_norm)");
    metrics->add_option("--y", y_channel, "Vertical loop channel (default Imem or V_norm)");

    std::string regime_file;
    auto* regime = app.add_subcommand("check-regime", "Evaluate the superconducting validity inequalities");
    regime->add_option("scenario", regime_file, "sc-feasibility scenario file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*run) {
            return cmd_run(scenario, out_dir, seed);
        }
        if (*metrics) {
            return cmd_metrics(csv, period, x_channel, y_channel);
        }
        return cmd_check_regime(regime_file);
    } catch (const hhq::Error& e) {
        std::fprintf(stderr, "hhq: %s: %s\n", hhq::to_string(e.kind()), e.what());
        return hhq::exit_code(e.kind());
    } catch (const std::filesystem::filesystem_error& e) {
        std::fprintf(stderr, "hhq: I/O error: %s\n", e.what());
        return hhq::exit_code(hhq::ErrorKind::io);
    }
}
