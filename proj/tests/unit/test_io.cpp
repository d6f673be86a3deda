#include <catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "hhq/errors.hpp"
#include "hhq/io/csv.hpp"
#include "hhq/io/metrics.hpp"
#include "hhq/io/runner.hpp"
#include "hhq/io/scenario.hpp"
#include "hhq/io/units.hpp"

using namespace hhq;
using namespace hhq::io;
using Catch::Approx;
namespace fs = std::filesystem;

namespace {

ErrorKind kind_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::parameter;
}

std::string message_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.what();
    }
    return {};
}

fs::path scratch_dir(const std::string& name)
{
    const fs::path p = fs::temp_directory_path() / ("hhq_test_io_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

const char* minimal_classical = R"([scenario]
model = classical
[drive]
I0 = 10 uA
Omega = 3000 rad/s
[integrator]
periods = 3
)";

} // namespace

TEST_CASE("quantities with units", "[io][units]")
{
    CHECK(parse_quantity("10 uA", Dimension::current).value == Approx(10e-6));
    CHECK(parse_quantity("1.5e-3", Dimension::current).value == Approx(1.5e-3));
    CHECK(parse_quantity("36 mS", Dimension::conductance).value == Approx(36e-3));
    CHECK(parse_quantity("50 Ohm", Dimension::resistance).value == 50.0);
    CHECK(parse_quantity("2 kOhm", Dimension::resistance).value == 2000.0);
    CHECK(parse_quantity("1 pF", Dimension::capacitance).value == Approx(1e-12));
    CHECK(parse_quantity("5 ms", Dimension::time).value == Approx(5e-3));
    CHECK(parse_quantity("10 us", Dimension::time).value == Approx(1e-5));
    CHECK(parse_quantity("1 kHz", Dimension::angular_frequency).value == Approx(2e3 * std::numbers::pi));
    CHECK(parse_quantity("100 rad/s", Dimension::angular_frequency).value == 100.0);
    CHECK(parse_quantity("0.01 1/s", Dimension::rate).value == Approx(0.01));
    CHECK(parse_quantity("2 1/ms", Dimension::rate).value == Approx(2000.0));
    CHECK(parse_quantity("1 GHz_h", Dimension::energy).value == Approx(6.62607015e-34 * 1e9).epsilon(1e-9));
    CHECK(parse_quantity("3 cm2", Dimension::area).value == 3.0);
    CHECK(parse_quantity("1 K", Dimension::temperature).value == 1.0);
    CHECK(parse_quantity("0.5", Dimension::dimensionless).value == 0.5);

    const auto pa = parse_quantity("36 mS/cm2", Dimension::conductance);
    CHECK(pa.per_area);
    CHECK(pa.value == Approx(36e-3));

    CHECK(kind_of([] { parse_quantity("10 uV", Dimension::current); }) == ErrorKind::parse);
    CHECK(kind_of([] { parse_quantity("abc", Dimension::current); }) == ErrorKind::parse);
    CHECK(kind_of([] { parse_quantity("1e999", Dimension::current); }) == ErrorKind::parse);
    CHECK(kind_of([] { parse_quantity("1 xA", Dimension::current); }) == ErrorKind::parse);
    CHECK(unit_symbol(Dimension::angular_frequency) == "rad/s");
    CHECK(std::stod(format_number(0.1)) == 0.1);
}

TEST_CASE("scenario parsing fills defaults", "[io][scenario]")
{
    const auto cfg = parse_scenario(minimal_classical);
    CHECK(cfg.model == Model::classical);
    CHECK(*cfg.drive.I0 == Approx(10e-6));
    CHECK(*cfg.drive.Omega == 3000.0);
    CHECK(*cfg.integrator.periods == 3.0);
    CHECK(cfg.param("Cg") == Approx(1e-6));
    CHECK(cfg.param("gK_max") == Approx(36e-3));
    CHECK_FALSE(cfg.given("Cg"));
    CHECK(std::isnan(cfg.param("n_init")));
    CHECK(cfg.outputs.csv == "trace.csv");
    CHECK(cfg.source_hash == fnv1a(minimal_classical));
    CHECK(kind_of([&] { (void)cfg.param("Zmin"); }) == ErrorKind::parameter);
}

TEST_CASE("per-area values scale with the membrane area", "[io][scenario]")
{
    const auto cfg = parse_scenario(std::string(minimal_classical) + R"(
[parameters]
area = 2 cm2
Cg = 1 uF/cm2
gK_max = 40 mS
)");
    CHECK(cfg.param("Cg") == Approx(2e-6));
    CHECK(cfg.param("gK_max") == Approx(40e-3));
    CHECK(cfg.given("gK_max"));
    CHECK(cfg.parameters.at("gK_max").line == 12);

    const auto bad = std::string(minimal_classical) + "[parameters]\nVK = 3 mV/cm2\n";
    CHECK(kind_of([&] { parse_scenario(bad); }) == ErrorKind::parse);
}

TEST_CASE("scenario errors name their line", "[io][scenario]")
{
    const std::string base = minimal_classical;
    auto msg = [](const std::string& text) { return message_of([&] { parse_scenario(text); }); };

    CHECK_THAT(msg(base + "[parameters]\nCg = 1 uF\nCg = 2 uF\n"),
               Catch::Matchers::ContainsSubstring("line 10") && Catch::Matchers::ContainsSubstring("line 9"));
    CHECK_THAT(msg(base + "[parameters]\nbogus = 1\n"), Catch::Matchers::ContainsSubstring("unknown key 'bogus'"));
    CHECK_THAT(msg(base + "[nonsense]\n"), Catch::Matchers::ContainsSubstring("unknown section"));
    CHECK_THAT(msg("[scenario]\nname = x\n"), Catch::Matchers::ContainsSubstring("model"));
    CHECK_THAT(msg("[scenario]\nmodel = classical\n"), Catch::Matchers::ContainsSubstring("I0"));
    CHECK_THAT(msg("[scenario]\nmodel = nope\n"), Catch::Matchers::ContainsSubstring("unknown model"));
    CHECK_THAT(msg(base + "[parameters]\nCg = 3 mV\n"), Catch::Matchers::ContainsSubstring("line 9"));
    CHECK_THAT(msg("model = classical\n"), Catch::Matchers::ContainsSubstring("outside"));
    CHECK_THAT(msg("[scenario]\nmodel = qmem-sme\n[parameters]\ndim = 2.5\n"),
               Catch::Matchers::ContainsSubstring("integer"));
    CHECK_THAT(msg("[scenario]\nmodel = quantized\n[drive]\nwaveform = sampled\nsamples_file = x.csv\n"),
               Catch::Matchers::ContainsSubstring("sampled"));
    CHECK_THAT(msg("[scenario]\nmodel = classical\nseed = -3\n"), Catch::Matchers::ContainsSubstring("seed"));
    CHECK_THAT(msg("[scenario]\nmodel = classical\n[drive]\nI0 = 1 uA\nOmega = 1 rad/s\n[integrator]\nscheme = leapfrog\n"),
               Catch::Matchers::ContainsSubstring("rk4"));
    CHECK_THAT(msg("[scenario\nmodel = classical\n"), Catch::Matchers::ContainsSubstring("line 1"));
}

TEST_CASE("comments and model keys", "[io][scenario]")
{
    const auto cfg = parse_scenario("# header\n; also a comment\n[scenario] # trailing\nmodel = sc-feasibility  # inline\n");
    CHECK(cfg.model == Model::sc_feasibility);
}

TEST_CASE("every model has a documented schema", "[io][scenario]")
{
    for (auto m : {Model::classical, Model::classical_full, Model::classical_adiabatic, Model::quantized,
                   Model::qmem_sme, Model::two_tl, Model::sc_feasibility}) {
        CHECK_FALSE(parameter_keys(m).empty());
    }
    CHECK(to_string(Model::two_tl) == "two-tl");
}

TEST_CASE("CSV round trip is exact", "[io][csv]")
{
    TimeSeries ts;
    ts.add_channel("V", "V");
    ts.add_channel("n", "1");
    ts.push_row({0.0, 0.1, 1.0 / 3.0});
    ts.push_row({1e-300, -2.5e-17, std::nextafter(1.0, 2.0)});
    std::stringstream ss;
    write_csv(ts, ss);
    CHECK(ss.str().starts_with("t (s),V (V),n (1)\n"));
    const auto back = read_csv(ss);
    REQUIRE(back.size() == 2);
    for (std::size_t k = 0; k < 2; ++k) {
        CHECK(back.time()[k] == ts.time()[k]);
        CHECK(back["V"][k] == ts["V"][k]);
        CHECK(back["n"][k] == ts["n"][k]);
    }
    CHECK(back.channel("V").unit == "V");

    std::stringstream only;
    write_csv(ts, only, {"n"});
    CHECK(only.str().starts_with("t (s),n (1)\n"));
    std::stringstream sink;
    CHECK(kind_of([&] { write_csv(ts, sink, {"missing"}); }) == ErrorKind::parameter);

    std::stringstream bad("t (s),V (V)\n0,1\n1\n");
    CHECK(kind_of([&] { read_csv(bad); }) == ErrorKind::parse);
    CHECK(kind_of([&] { read_csv_file("/nonexistent/trace.csv"); }) == ErrorKind::io);
    CHECK(format_csv_number(0.1) == "1.0000000000000001e-01");
}

TEST_CASE("drive sample files", "[io][csv]")
{
    const auto [t, i] = read_drive_samples(fs::path(HHQ_TEST_DATA_DIR) / "ramp_drive.csv");
    REQUIRE(t.size() == 5);
    CHECK(t[1] == Approx(1e-3));
    CHECK(i[3] == Approx(-1e-5));
    CHECK(kind_of([] { read_drive_samples("/nonexistent.csv"); }) == ErrorKind::io);
}

TEST_CASE("saturation time", "[io][metrics]")
{
    memristor::LoopMetrics loop;
    loop.cycle_starts = {0, 1, 2, 3, 4, 5};
    loop.cycle_areas = {5.0, 3.0, 2.0, 2.01, 2.0, 2.0};
    CHECK(saturation_time(loop).value() == 2.0);
    loop.cycle_areas = {1, 2, 3, 4, 5, 6};
    CHECK_FALSE(saturation_time(loop).has_value());
    loop.cycle_areas = {0, 0, 0, 0, 0, 0};
    CHECK(saturation_time(loop).value() == 0.0);
}

TEST_CASE("metrics JSON", "[io][metrics]")
{
    TimeSeries ts;
    ts.add_channel("V", "V");
    ts.add_channel("Imem", "A");
    const double W = 2.0 * std::numbers::pi;
    for (int k = 0; k <= 4000; ++k) {
        const double t = k / 1000.0;
        ts.push_row({t, std::sin(W * t), std::sin(W * t) * (1.0 + 0.5 * std::cos(W * t))});
    }
    CHECK(default_loop_channels(ts) == std::pair<std::string, std::string>{"V", "Imem"});
    auto report = compute_metrics(ts, 1.0, "V", "Imem");
    REQUIRE(report.loop.has_value());
    CHECK(report.loop->pinched);
    CHECK(report.limit_cycle.detected);
    report.provenance = {"abc", 3, "0.1.0", "classical"};
    report.values["x"] = 1.5;

    const auto j = nlohmann::json::parse(to_json(report));
    CHECK(j["loop"]["pinched"] == true);
    CHECK(j["loop"]["x"] == "V");
    CHECK(j["loop"]["cycle_areas"].size() == 4);
    CHECK(j["provenance"]["seed"] == 3);
    CHECK(j["values"]["x"] == 1.5);
    CHECK(j["limit_cycle"]["detected"] == true);
    CHECK(to_json(report).back() == '\n');

    TimeSeries other;
    other.add_channel("q", "C");
    CHECK(kind_of([&] { default_loop_channels(other); }) == ErrorKind::parameter);
}

TEST_CASE("runner: every example scenario", "[io][runner]")
{
    const fs::path dir = HHQ_SCENARIO_DIR;
    RunOptions opts;
    opts.write_files = false;

    SECTION("classical")
    {
        const auto r = run_scenario(load_scenario((dir / "classical.ini").string()), opts);
        CHECK(r.trace.has("gK"));
        REQUIRE(r.metrics.loop.has_value());
        CHECK(r.metrics.loop->pinched);
        CHECK(r.metrics.provenance.model == "classical");
        CHECK(r.metrics.provenance.config_hash.size() == 16);
    }
    SECTION("full")
    {
        const auto r = run_scenario(load_scenario((dir / "classical_full.ini").string()), opts);
        CHECK(r.trace.has("gNa"));
    }
    SECTION("adiabatic")
    {
        const auto r = run_scenario(load_scenario((dir / "adiabatic.ini").string()), opts);
        CHECK(r.metrics.loop->pinched);
    }
    SECTION("quantized")
    {
        const auto r = run_scenario(load_scenario((dir / "quantized.ini").string()), opts);
        CHECK(r.trace.has("Z"));
        CHECK(r.metrics.values.at("Zmin") == Approx(1.0 / 36e-3));
        CHECK(r.metrics.limit_cycle.detected);
    }
    SECTION("qmem")
    {
        const auto r = run_scenario(load_scenario((dir / "qmem.ini").string()), opts);
        CHECK(r.trace.has("purity"));
        CHECK(r.metrics.metadata.at("positivity_breached") == "false");
        CHECK(r.metrics.provenance.seed == 7);
        RunOptions seeded = opts;
        seeded.seed = 8;
        const auto s = run_scenario(load_scenario((dir / "qmem.ini").string()), seeded);
        CHECK(s.metrics.provenance.seed == 8);
        CHECK(s.trace["q"].back() != r.trace["q"].back());
    }
    SECTION("two lines")
    {
        const auto r = run_scenario(load_scenario((dir / "two_tl.ini").string()), opts);
        CHECK(r.trace.has("second_moment"));
        CHECK(r.metrics.values.at("reflection_term") > 0.0);
    }
    SECTION("sc")
    {
        const auto r = run_scenario(load_scenario((dir / "sc.ini").string()), opts);
        REQUIRE(r.metrics.regime.has_value());
        CHECK(r.metrics.regime->pass());
        CHECK(r.metrics.loop->pinched);
        CHECK(check_regime(load_scenario((dir / "sc.ini").string())).pass());
        CHECK(kind_of([&] { check_regime(load_scenario((dir / "classical.ini").string())); }) == ErrorKind::parameter);
    }
}

TEST_CASE("runner: sampled drive relative to the scenario file", "[io][runner]")
{
    const fs::path data = HHQ_TEST_DATA_DIR;
    RunOptions opts;
    opts.write_files = false;
    opts.scenario_dir = data;
    const auto r = run_scenario(load_scenario((data / "sampled.ini").string()), opts);
    CHECK(r.trace["I"][100] == Approx(1e-5).epsilon(1e-9));  // t = 1 ms
    CHECK(r.metrics.values.count("pinch_distance") + (r.metrics.loop ? 1 : 0) == 1);

    RunOptions lost = opts;
    lost.scenario_dir = "/nonexistent";
    CHECK(kind_of([&] { run_scenario(load_scenario((data / "sampled.ini").string()), lost); }) == ErrorKind::io);
}

TEST_CASE("runner: errors keep their kind and name the scenario", "[io][runner]")
{
    RunOptions opts;
    opts.write_files = false;
    const auto cfg = parse_scenario("[scenario]\nmodel = sc-feasibility\nname = coarse\n[parameters]\nsamples_per_period = 5\n");
    const auto msg = message_of([&] { run_scenario(cfg, opts); });
    CHECK_THAT(msg, Catch::Matchers::StartsWith("scenario 'coarse': "));
    CHECK(kind_of([&] { run_scenario(cfg, opts); }) == ErrorKind::resolution);
    CHECK(kind_of([] { load_scenario("/nonexistent.ini"); }) == ErrorKind::io);
}

TEST_CASE("runner: output files and HHQ_OUT_DIR", "[io][runner]")
{
    const auto dir = scratch_dir("env");
    ::setenv("HHQ_OUT_DIR", dir.c_str(), 1);
    CHECK(default_out_dir() == dir);
    const auto r = run_scenario(parse_scenario(minimal_classical));
    CHECK(r.csv_path == dir / "trace.csv");
    CHECK(fs::exists(dir / "trace.csv"));
    CHECK(fs::exists(dir / "metrics.json"));
    ::unsetenv("HHQ_OUT_DIR");
    CHECK(default_out_dir() == ".");

    RunOptions opts;
    opts.out_dir = dir / "nested" / "deeper";
    const auto cfg = parse_scenario(std::string(minimal_classical) + "[outputs]\ncsv = v.csv\njson = m.json\nchannels = V, gK\n");
    run_scenario(cfg, opts);
    std::ifstream in(opts.out_dir / "v.csv");
    std::string header;
    std::getline(in, header);
    CHECK(header == "t (s),V (V),gK (S)");
    CHECK(fs::exists(opts.out_dir / "m.json"));
    fs::remove_all(dir);
}

TEST_CASE("metrics from the written CSV match the in-memory metrics", "[io][runner]")
{
    const auto dir = scratch_dir("roundtrip");
    RunOptions opts;
    opts.out_dir = dir;
    const auto cfg = load_scenario((fs::path(HHQ_SCENARIO_DIR) / "quantized.ini").string());
    const auto r = run_scenario(cfg, opts);
    const auto back = read_csv_file(r.csv_path);
    const auto m = compute_metrics(back, 2.0 * std::numbers::pi / *cfg.drive.Omega, "V", "Imem");
    REQUIRE(r.metrics.loop.has_value());
    CHECK(m.loop->area == Approx(r.metrics.loop->area).epsilon(1e-12));
    CHECK(m.loop->pinch_distance == Approx(r.metrics.loop->pinch_distance).margin(1e-12));
    REQUIRE(m.loop->cycle_areas.size() == r.metrics.loop->cycle_areas.size());
    for (std::size_t k = 0; k < m.loop->cycle_areas.size(); ++k) {
        REQUIRE(m.loop->cycle_areas[k] == Approx(r.metrics.loop->cycle_areas[k]).epsilon(1e-12));
    }
    CHECK(m.saturation_time == r.metrics.saturation_time);
    fs::remove_all(dir);
}
