#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"

#include "landis/config.hpp"
#include "landis/report.hpp"

using namespace landis;

namespace {

std::string error_of(const std::string& text) {
    try {
        parse_config(parse_json_text(text, "test"));
    } catch (const ConfigError& e) {
        return e.what();
    }
    return {};
}

Json full_config() {
    Json j = parse_json_text(R"({
      "params": {"N": 2, "s": 0.3, "lambda": 0.5, "Lambda": 2},
      "operator": {"mode": "sup", "kernel": "family",
                   "family": [{"sectors": 2, "shell_edges": [1.5], "values": [0.5, 2, 1, 1]},
                              {"sectors": 1, "values": [1.25]}]},
      "domain": {"center": [0.5, -1], "R": 2, "h": 0.25, "R_cut": 6, "shape": "box", "hole": 0.5},
      "quadrature": {"core_cells": 3, "tail_tol": 1e-7},
      "potential": {"kind": "gaussian", "amplitude": -2, "width": 0.5},
      "f": 0.25, "g": {"kind": "power_tail", "p": 2.6},
      "reference": {"kind": "bump", "radius": 2, "power": 3},
      "u": {"from": "file", "path": "grid.csv"},
      "points": [[0, 0], [0.5, 0.25]],
      "tolerances": {"solve": 1e-9, "residual": 1e-5, "exhaustion": 1e-3, "defect": 1e-7, "zero": 1e-12},
      "exhaustion": {"x0": [0.1, 0], "radii": [1, 2, 4], "h0": 0.125, "max_nodes_per_dim": 41,
                     "normalization": "weighted_norm"},
      "R_list": [1, 3, 9],
      "harnack": {"C0": 0.5, "r0": 0.75, "slack": 0.2, "C_budget": 50},
      "decay": {"R_min": 2, "R_max": 16},
      "output": "somewhere"
    })", "full");
    return j;
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("canonical JSON round trips") {
    const ExperimentConfig def = parse_config(Json::object());
    CHECK(parse_config(to_json(def)) == def);
    CHECK(to_json(parse_config(to_json(def))).dump() == to_json(def).dump());

    const ExperimentConfig full = parse_config(full_config());
    CHECK(full.mode == OperatorMode::sup);
    CHECK(full.family.size() == 2);
    CHECK(full.domain.shape == Shape::box);
    CHECK(full.u.kind == InputSource::Kind::file);
    CHECK(full.exhaustion.tol == 1e-3);
    CHECK(full.exhaustion.normalization == Normalization::weighted_norm);
    CHECK(full.has_reference);
    CHECK(parse_config(to_json(full)) == full);
}

TEST_CASE("key order of the canonical form is stable") {
    const Json j = to_json(parse_config(full_config()));
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items()) keys.push_back(k);
    const std::vector<std::string> expected{"params", "operator", "domain",  "quadrature", "potential", "f",
                                            "g",      "reference", "u",      "points",     "tolerances", "exhaustion",
                                            "R_list", "harnack",  "decay",   "output"};
    CHECK(keys == expected);
}

TEST_CASE("errors name the offending field") {
    CHECK(error_of(R"({"reference": {"kind": "gaussian", "widht": 2}})").find("reference.widht") != std::string::npos);
    CHECK(error_of(R"({"params": {"N": 1, "s": 1.5}})").find("params") != std::string::npos);
    CHECK(error_of(R"({"domain": {"shape": "disk"}})").find("domain.shape") != std::string::npos);
    CHECK(error_of(R"({"f": {"kind": "sinc"}})").find("f.kind") != std::string::npos);
    CHECK(error_of(R"({"tolerances": {"solve": 0}})").find("tolerances") != std::string::npos);
    CHECK(error_of(R"({"R_list": [2, 1]})").find("R_list") != std::string::npos);
    CHECK(error_of(R"({"u": {"from": "thin air"}})").find("u.from") != std::string::npos);
    CHECK(error_of(R"({"domain": {"R": "one"}})").find("domain.R") != std::string::npos);
}

TEST_CASE("syntax errors report line and column") {
    const std::string msg = error_of("{\n  \"params\": {\"N\": 1,,}\n}");
    CHECK(msg.find("line 2") != std::string::npos);
    CHECK(msg.find("column") != std::string::npos);
}

TEST_CASE("overrides set nested keys") {
    Json j = full_config();
    apply_override(j, "domain.h=0.125");
    apply_override(j, "operator.mode=inf");
    apply_override(j, "harnack.extra.deep=1");
    CHECK(j["domain"]["h"] == 0.125);
    CHECK(j["operator"]["mode"] == "inf");
    CHECK(j["harnack"]["extra"]["deep"] == 1);
    CHECK_THROWS_AS(apply_override(j, "no_equals_sign"), ConfigError);
    CHECK_THROWS_AS(apply_override(j, "domain.h.x=1"), ConfigError);
    // the unknown key is only caught when the result is parsed
    CHECK_THROWS_AS(parse_config(j), ConfigError);
}

TEST_CASE("inputs digest ignores the output directory") {
    ExperimentConfig a = parse_config(full_config());
    ExperimentConfig b = a;
    b.output = "elsewhere";
    CHECK(inputs_digest(a) == inputs_digest(b));
    CHECK(inputs_digest(a).size() == 16);
    b.domain.h = 0.125;
    CHECK(inputs_digest(a) != inputs_digest(b));
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}

TEST_CASE("tables and reports") {
    CHECK(table_csv(Table{"t", {"R", "rho"}, {}}) == "R,rho\n");
    CHECK(table_csv(Table{"t", {"x"}, {{0.1}}}) == "x\n0.10000000000000001\n");
    CHECK_THROWS(table_csv(Table{"t", {"a", "b"}, {{1.0}}}));

    ExperimentReport r;
    r.flag("one", true);
    CHECK(r.passed());
    r.flag("two", false);
    CHECK_FALSE(r.passed());
    r.scalar("inf", std::numeric_limits<double>::infinity());
    const Json j = r.to_json();
    CHECK(j["status"] == "fail");
    CHECK(j["scalars"]["inf"].is_string());

    const std::filesystem::path dir = std::filesystem::temp_directory_path() / "landis_config_test";
    std::filesystem::remove_all(dir);
    emit_tables(r, {Table{"t", {"a"}, {{1.0}, {2.0}}}}, dir);
    std::ifstream in(dir / "t.csv");
    std::string all((std::istreambuf_iterator<char>(in)), {});
    CHECK(all == "a\n1\n2\n");
    CHECK(std::filesystem::exists(dir / "report.json"));
    std::filesystem::remove_all(dir);
}

}  // TEST_SUITE
