#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

#include "landis/config.hpp"
#include "landis_cli/cli.hpp"

namespace fs = std::filesystem;

namespace {

std::string configs(const std::string& name) {
    const char* dir = std::getenv("LANDIS_CONFIGS");
    REQUIRE_MESSAGE(dir, "LANDIS_CONFIGS must point at the configs directory");
    return (fs::path(dir) / name).string();
}

struct Invocation {
    int code = 0;
    std::string out, err;
};

Invocation run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "landis");
    std::ostringstream out, err;
    Invocation r;
    r.code = landis::cli::run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

std::size_t lines(const std::string& text) { return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')); }

struct Scratch {
    fs::path dir;
    explicit Scratch(const std::string& name) : dir(fs::temp_directory_path() / ("landis_cli_test_" + name)) {
        fs::remove_all(dir);
    }
    ~Scratch() { fs::remove_all(dir); }
};

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("input errors exit with 2") {
    CHECK(run_cli({"solve", "--config", "/nonexistent/config.json"}).code == landis::cli::kInputError);
    CHECK(run_cli({"solve"}).code == landis::cli::kInputError);
    CHECK(run_cli({"frobnicate"}).code == landis::cli::kInputError);
    const Invocation bad = run_cli({"solve", "--config", configs("getoor.json"), "--override", "domain.h=0.3"});
    CHECK(bad.code == landis::cli::kInputError);
    CHECK(bad.err.find("domain") != std::string::npos);
    CHECK(run_cli({"decay", "--config", configs("decay_power_tail.json"), "--tol", "1e-3"}).code ==
          landis::cli::kInputError);
    CHECK(run_cli({"--help"}).code == landis::cli::kPass);
}

TEST_CASE("solve writes a reproducible solution grid") {
    Scratch a("solve_a"), b("solve_b");
    const Invocation r = run_cli({"solve", "--config", configs("getoor.json"), "--out", a.dir.string()});
    CHECK(r.code == landis::cli::kPass);
    REQUIRE(fs::exists(a.dir / "solution.csv"));
    REQUIRE(fs::exists(a.dir / "report.json"));
    const landis::Json rep = landis::parse_json_text(slurp(a.dir / "report.json"), "report");
    CHECK(rep["status"] == "pass");
    CHECK(rep["flags"]["converged"] == true);
    CHECK_FALSE(rep["config"].contains("output"));

    CHECK(run_cli({"solve", "--config", configs("getoor.json"), "--out", b.dir.string()}).code == landis::cli::kPass);
    CHECK(slurp(a.dir / "solution.csv") == slurp(b.dir / "solution.csv"));
    CHECK(slurp(a.dir / "report.json") == slurp(b.dir / "report.json"));
}

TEST_CASE("tolerance flag and overrides reach the config") {
    Scratch a("tol");
    const Invocation r = run_cli({"solve", "--config", configs("getoor.json"), "--out", a.dir.string(), "--tol",
                                 "1e-8", "--override", "domain.h=0.03125"});
    CHECK(r.code == landis::cli::kPass);
    const landis::Json rep = landis::parse_json_text(slurp(a.dir / "report.json"), "report");
    CHECK(rep["config"]["tolerances"]["solve"] == 1e-8);
    CHECK(rep["config"]["domain"]["h"] == 0.03125);
}

TEST_CASE("harnack table has one row per radius") {
    Scratch a("harnack");
    const fs::path cfg = a.dir / "harnack.json";
    fs::create_directories(a.dir);
    std::ofstream(cfg) << R"({
      "params": {"N": 1, "s": 0.5, "lambda": 0.3183098861837907, "Lambda": 0.3183098861837907},
      "domain": {"R": 8, "h": 0.0625, "R_cut": 16},
      "potential": 0,
      "u": {"kind": "power_tail", "p": 2},
      "R_list": [1, 2, 4, 8]
    })";
    const Invocation r = run_cli({"harnack", "--config", cfg.string(), "--out", (a.dir / "out").string()});
    CHECK(r.code != landis::cli::kInputError);
    CHECK(lines(slurp(a.dir / "out" / "harnack.csv")) == 5);
}

TEST_CASE("output directory falls back to the environment") {
    Scratch a("env");
    setenv(landis::cli::kOutEnv, a.dir.string().c_str(), 1);
    const Invocation r = run_cli({"decay", "--config", configs("decay_power_tail.json")});
    unsetenv(landis::cli::kOutEnv);
    CHECK(r.code == landis::cli::kPass);
    CHECK(fs::exists(a.dir / "shells.csv"));
}

TEST_CASE("corpus exit code aggregates the criteria") {
    Scratch a("corpus");
    const Invocation r = run_cli({"corpus", "--out", a.dir.string()});
    const landis::Json rep = landis::parse_json_text(slurp(a.dir / "report.json"), "report");
    bool all = true;
    for (const auto& [k, v] : rep["flags"].items()) all = all && v.get<bool>();
    CHECK(rep["flags"].size() == 9);
    CHECK(r.code == (all ? landis::cli::kPass : landis::cli::kVerificationFailure));
    CHECK(lines(r.out) >= 9);
}

}  // TEST_SUITE
