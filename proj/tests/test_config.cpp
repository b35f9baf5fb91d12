#include <fstream>
#include <numbers>

#include "doctest.h"
#include "pointkg/config.hpp"
#include "pointkg/errors.hpp"

using namespace pointkg;
using nlohmann::json;
using doctest::Approx;

namespace {

json base() {
    return json::parse(R"({
      "schema_version": 1,
      "model": {"m": 1.0, "potential": [0.0, -1.0, 1.0]},
      "initial_data": {"preset": "soliton", "omega": 0.3},
      "solver": {"dt": 0.05, "T": 150.0},
      "diagnostics": {"spectrum_windows": [[0, 150]], "attraction_times": [10, 150]}
    })");
}

}  // namespace

TEST_CASE("defaults parse from an empty object") {
    const RunConfig c = parse_config(json::object());
    CHECK(c.m == 1.0);
    CHECK(c.potential == std::vector<double>{0.0, -1.0, 1.0});
    CHECK(c.initial.preset == "soliton");
    CHECK(c.diagnostics.R_max == 10);
}

TEST_CASE("bundled configurations load") {
    for (const char* name : {"zero", "soliton", "soliton_omega05", "perturbed_soliton", "green"}) {
        INFO(name);
        CHECK_NOTHROW((void)load_config(std::string(POINTKG_CONFIG_DIR) + "/" + name + ".json"));
    }
}

TEST_CASE("unknown keys are rejected") {
    for (const char* path : {"/bogus", "/model/bogus", "/solver/bogus", "/diagnostics/bogus", "/initial_data/bogus"}) {
        json j = base();
        j[json::json_pointer(path)] = 1;
        INFO(path);
        CHECK_THROWS_AS((void)parse_config(j), ConfigError);
    }
    json j = base();
    j["initial_data"] = {{"preset", "zero"}, {"omega", 0.1}};
    CHECK_THROWS_AS((void)parse_config(j), ConfigError);
}

TEST_CASE("invalid values are rejected") {
    auto bad = [](const char* ptr, json v) {
        json j = base();
        j[json::json_pointer(ptr)] = v;
        CHECK_THROWS_AS((void)parse_config(j), ConfigError);
    };
    bad("/model/potential", json::array({0.0, -1.0}));
    bad("/model/potential", json::array({0.0, 1.0, -1.0}));
    bad("/model/m", -1.0);
    bad("/solver/dt", 0.07);
    bad("/solver/conv_mode", "fast");
    bad("/initial_data/omega", 1.0);
    bad("/initial_data/preset", "kink");
    bad("/diagnostics/taper", "kaiser");
    bad("/diagnostics/spectrum_windows", json::parse("[[0, 100]]"));
    bad("/diagnostics/attraction_times", json::parse("[200]"));
    bad("/schema_version", 2);
}

TEST_CASE("potential degree error cites the assumption") {
    json j = base();
    j["model"]["potential"] = {0.0, 1.0};
    try {
        (void)parse_config(j);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("N>=2") != std::string::npos);
    }
}

TEST_CASE("custom data must satisfy the domain condition") {
    json j = base();
    j["initial_data"] = json::parse(R"({"preset": "custom", "zeta0": [1.0, 0.0],
        "psi_reg": [{"coefficient": [0.5, 0.0], "shape": {"kind": "gaussian", "center": 0.0, "width": 1.0}}]})");
    CHECK_THROWS_AS((void)parse_config(j), ConfigError);
    // F(1) = b(1) = 1 for the default potential.
    j["initial_data"]["psi_reg"][0]["coefficient"] = {1.0, 0.0};
    const RunConfig c = parse_config(j);
    CHECK(std::abs(build_state(c).domain_defect(c.potential_model())) <= 1e-12);
}

TEST_CASE("canonical JSON round-trips and the hash is stable") {
    json j = base();
    j["initial_data"] = json::parse(R"({"preset": "perturbed_soliton", "omega": 0.2,
        "perturbation": {"shape": {"kind": "bump", "center": 4.0, "width": 2.0}, "relative_size": 0.1, "component": "pi"}})");
    const RunConfig a = parse_config(j);
    const RunConfig b = parse_config(to_json(a));
    CHECK(to_json(a) == to_json(b));
    CHECK(config_hash(a) == config_hash(b));
    CHECK(config_hash(a).size() == 16);
    j["solver"]["dt"] = 0.025;
    CHECK(config_hash(parse_config(j)) != config_hash(a));
}

TEST_CASE("presets build the expected states") {
    const Mass m(1.0);
    json j = base();
    RunConfig c = parse_config(j);
    const auto w = preset_wave(c);
    CHECK(w.omega == 0.3);
    CHECK(w.q == Approx(std::sqrt((1.0 + (1.0 - std::sqrt(0.91)) / (4 * std::numbers::pi)) / 2.0)).epsilon(1e-12));

    j["initial_data"] = json::parse(R"({"preset": "perturbed_soliton", "omega": 0.0})");
    c = parse_config(j);
    const auto st = build_state(c);
    const auto ref = soliton_state(0.0, std::sqrt(0.5), 0.0, m);
    CHECK(st.psi_reg.terms.size() == ref.psi_reg.terms.size() + 1);
    CHECK(st.zeta0 == ref.zeta0);

    j["initial_data"] = json::parse(R"({"preset": "green", "zeta0": [0.7071067811865476, 0.0]})");
    CHECK(build_state(parse_config(j)).psi_reg.empty());
    j["initial_data"] = json::parse(R"({"preset": "green", "zeta0": [1.0, 0.0]})");
    CHECK_THROWS_AS((void)parse_config(j), ConfigError);
}

TEST_CASE("load_config errors") {
    CHECK_THROWS_AS((void)load_config("/nonexistent/config.json"), ConfigError);
    const std::string path = "/tmp/pointkg_bad_config.json";
    std::ofstream(path) << "{ not json";
    CHECK_THROWS_AS((void)load_config(path), ConfigError);
}
