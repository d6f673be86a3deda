#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

using Catch::Matchers::ContainsSubstring;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code = -1;
    std::string out;
};

const fs::path scratch = fs::temp_directory_path() / "hhq_test_cli";

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome hhq(const std::string& args, const std::string& env = {})
{
    fs::create_directories(scratch);
    const fs::path log = scratch / "log.txt";
    const std::string cmd = env + " \"" HHQ_EXE "\" " + args + " > \"" + log.string() + "\" 2>&1";
    const int status = std::system(cmd.c_str());
    Outcome o;
    o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    o.out = slurp(log);
    return o;
}

fs::path write_file(const std::string& name, const std::string& text)
{
    fs::create_directories(scratch);
    const fs::path p = scratch / name;
    std::ofstream(p) << text;
    return p;
}

std::string scenario(const std::string& name)
{
    return "\"" + (fs::path(HHQ_SCENARIO_DIR) / name).string() + "\"";
}

} // namespace

TEST_CASE("run writes trace and metrics", "[cli]")
{
    const fs::path out = scratch / "run";
    fs::remove_all(out);
    const auto o = hhq("run " + scenario("classical.ini") + " --out-dir \"" + out.string() + "\"");
    CHECK(o.code == 0);
    CHECK_THAT(o.out, ContainsSubstring("trace.csv"));
    CHECK(fs::exists(out / "trace.csv"));
    CHECK(fs::exists(out / "metrics.json"));
}

TEST_CASE("reruns are byte-identical", "[cli]")
{
    for (const char* name : {"classical.ini", "qmem.ini"}) {
        const fs::path a = scratch / "a", b = scratch / "b";
        fs::remove_all(a);
        fs::remove_all(b);
        REQUIRE(hhq("run " + scenario(name) + " --out-dir \"" + a.string() + "\"").code == 0);
        REQUIRE(hhq("run " + scenario(name) + " --out-dir \"" + b.string() + "\"").code == 0);
        CHECK(slurp(a / "trace.csv") == slurp(b / "trace.csv"));
        CHECK(slurp(a / "metrics.json") == slurp(b / "metrics.json"));
    }
}

TEST_CASE("seed override changes the stochastic trace", "[cli]")
{
    const fs::path a = scratch / "s1", b = scratch / "s2";
    REQUIRE(hhq("run " + scenario("qmem.ini") + " --seed 1 --out-dir \"" + a.string() + "\"").code == 0);
    REQUIRE(hhq("run " + scenario("qmem.ini") + " --seed 2 --out-dir \"" + b.string() + "\"").code == 0);
    CHECK(slurp(a / "trace.csv") != slurp(b / "trace.csv"));
    CHECK_THAT(slurp(b / "metrics.json"), ContainsSubstring("\"seed\": 2"));
}

TEST_CASE("HHQ_OUT_DIR sets the default output root", "[cli]")
{
    const fs::path env_dir = scratch / "env";
    fs::remove_all(env_dir);
    fs::create_directories(env_dir);
    const auto o = hhq("run " + scenario("sc.ini"), "HHQ_OUT_DIR=\"" + env_dir.string() + "\"");
    CHECK(o.code == 0);
    CHECK(fs::exists(env_dir / "trace.csv"));
}

TEST_CASE("metrics subcommand reads a written trace", "[cli]")
{
    const fs::path out = scratch / "m";
    REQUIRE(hhq("run " + scenario("adiabatic.ini") + " --out-dir \"" + out.string() + "\"").code == 0);
    const auto o = hhq("metrics \"" + (out / "trace.csv").string() + "\" --period 0.0020943951023931952");
    CHECK(o.code == 0);
    CHECK_THAT(o.out, ContainsSubstring("\"pinched\": true"));
    CHECK(hhq("metrics \"" + (out / "trace.csv").string() + "\"").code == 2);
    CHECK(hhq("metrics \"" + (out / "trace.csv").string() + "\" --period -1").code == 2);
}

TEST_CASE("check-regime", "[cli]")
{
    const auto ok = hhq("check-regime " + scenario("sc.ini"));
    CHECK(ok.code == 0);
    CHECK_THAT(ok.out, ContainsSubstring("verdict: pass"));

    const auto bad = write_file("bad_regime.ini", "[scenario]\nmodel = sc-feasibility\n[parameters]\nT10 = 5 ms\n");
    const auto v = hhq("check-regime \"" + bad.string() + "\"");
    CHECK(v.code == 1);
    CHECK_THAT(v.out, ContainsSubstring("VIOLATED"));

    CHECK(hhq("check-regime " + scenario("classical.ini")).code == 2);
}

TEST_CASE("exit codes", "[cli]")
{
    CHECK(hhq("").code == 2);
    CHECK(hhq("frobnicate").code == 2);
    CHECK(hhq("run").code == 2);
    CHECK(hhq("--version").code == 0);

    const auto parse = write_file("parse.ini", "[scenario]\nmodel = classical\nbogus = 1\n");
    const auto p = hhq("run \"" + parse.string() + "\" --out-dir \"" + (scratch / "x").string() + "\"");
    CHECK(p.code == 2);
    CHECK_THAT(p.out, ContainsSubstring("line 3"));

    const auto blowup = write_file("blowup.ini",
                                   "[scenario]\nmodel = classical\n[drive]\nI0 = 1e300 A\nOmega = 1000 rad/s\n"
                                   "[integrator]\nperiods = 2\n");
    const auto b = hhq("run \"" + blowup.string() + "\" --out-dir \"" + (scratch / "x").string() + "\"");
    CHECK(b.code == 3);
    CHECK_THAT(b.out, ContainsSubstring("integration error"));

    const auto coarse = write_file("coarse.ini", "[scenario]\nmodel = sc-feasibility\n[parameters]\nsamples_per_period = 10\n");
    CHECK(hhq("run \"" + coarse.string() + "\" --out-dir \"" + (scratch / "x").string() + "\"").code == 4);

    const auto missing = hhq("run \"" + (scratch / "no_such.ini").string() + "\"");
    CHECK(missing.code == 5);
    CHECK_THAT(missing.out, ContainsSubstring("I/O error"));
    CHECK(hhq("metrics \"" + (scratch / "no_such.csv").string() + "\" --period 1").code == 5);

    // A regular file where the output directory should be.
    const auto blocker = write_file("blocker", "x");
    CHECK(hhq("run " + scenario("sc.ini") + " --out-dir \"" + (blocker / "sub").string() + "\"").code == 5);
}
