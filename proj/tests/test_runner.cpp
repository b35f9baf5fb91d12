#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <sys/wait.h>

#include "doctest.h"
#include "pointkg/config.hpp"
#include "pointkg/errors.hpp"
#include "pointkg/runner.hpp"

using namespace pointkg;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("pointkg_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(POINTKG_CLI) + " " + args + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
    std::ifstream in(p);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(cell);
        rows.push_back(row);
    }
    return rows;
}

json read_json(const fs::path& p) {
    std::ifstream in(p);
    return json::parse(in);
}

RunConfig small_config(const std::string& preset) {
    json j = json::parse(R"({
      "initial_data": {"preset": "soliton", "omega": 0.4},
      "solver": {"dt": 0.05, "T": 130.0},
      "grid": {"dr": 0.05, "R_out": 30.0},
      "diagnostics": {"attraction_times": [65, 130], "energy_times": [0, 20], "field_times": [20],
                      "spectrum_windows": [[0, 130]]}
    })");
    j["initial_data"] = preset == "zero" ? json{{"preset", "zero"}} : j["initial_data"];
    return parse_config(j);
}

}  // namespace

TEST_CASE("format_double round-trips") {
    for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23}) CHECK(std::stod(format_double(x)) == x);
}

TEST_CASE("trajectory CSV round-trip") {
    Trajectory tr;
    tr.dt = 0.1;
    for (int k = 0; k < 50; ++k) {
        tr.zeta.push_back(std::polar(0.7, 0.123 * k));
        tr.lam.push_back(cplx(1.0 / (k + 3), -k * 1e-3));
    }
    const auto dir = scratch("csv");
    write_trajectory_csv((dir / "trajectory.csv").string(), tr);
    const auto rows = read_csv(dir / "trajectory.csv");
    CHECK(rows[0] == std::vector<std::string>{"t", "re_zeta", "im_zeta", "abs_zeta", "re_lambda", "im_lambda"});
    const auto back = read_trajectory_csv((dir / "trajectory.csv").string());
    REQUIRE(back.size() == tr.size());
    for (std::size_t k = 0; k < tr.size(); ++k) {
        CHECK(back.zeta[k] == tr.zeta[k]);
        CHECK(back.lam[k] == tr.lam[k]);
    }
    CHECK(back.dt == doctest::Approx(0.1).epsilon(1e-14));

    std::ofstream(dir / "bad.csv") << "time,zeta\n0,1\n";
    CHECK_THROWS_AS((void)read_trajectory_csv((dir / "bad.csv").string()), InputError);
    std::ofstream(dir / "uneven.csv") << "t,re_zeta,im_zeta,abs_zeta,re_lambda,im_lambda\n0,1,0,1,0,0\n0.1,1,0,1,0,0\n0.3,1,0,1,0,0\n";
    CHECK_THROWS_AS((void)read_trajectory_csv((dir / "uneven.csv").string()), InputError);
}

TEST_CASE("zero run writes all-zero outputs") {
    const auto cfg = small_config("zero");
    const auto res = simulate(cfg);
    const auto dir = scratch("zero");
    write_outputs(res, cfg, dir.string());
    const auto traj = read_csv(dir / "trajectory.csv");
    REQUIRE(traj.size() == res.traj.size() + 1);
    for (std::size_t i = 1; i < traj.size(); ++i) {
        CHECK(std::stod(traj[i][1]) == 0.0);
        CHECK(std::stod(traj[i][2]) == 0.0);
    }
    const auto att = read_csv(dir / "attraction.csv");
    CHECK(att[0] == std::vector<std::string>{"t", "dist", "omega_best", "q_best"});
    REQUIRE(att.size() == 3);
    for (std::size_t i = 1; i < att.size(); ++i) CHECK(std::stod(att[i][1]) == 0.0);
    const auto s = read_json(dir / "summary.json");
    CHECK(s["status"] == "ok");
    CHECK(s["omega_hat"].is_null());
    CHECK(s["sup_abs_zeta"] == 0.0);
}

TEST_CASE("soliton run outputs and determinism") {
    const auto cfg = small_config("soliton");
    const auto a = simulate(cfg);
    const auto b = simulate(cfg);
    CHECK(a.summary == b.summary);
    const auto dir = scratch("soliton");
    write_outputs(a, cfg, dir.string());
    for (const char* f : {"trajectory.csv", "energy.csv", "attraction.csv", "spectrum_0.csv", "field_20.csv",
                          "summary.json", "config.json"}) {
        INFO(f);
        CHECK(fs::exists(dir / f));
    }
    const auto s = read_json(dir / "summary.json");
    CHECK(s["schema_version"] == kSummarySchemaVersion);
    CHECK(s["config_hash"] == config_hash(cfg));
    CHECK(s["qsol_residual"].get<double>() <= 1e-2);
    CHECK(std::fabs(s["omega_hat"].get<double>() - 0.4) <= 2 * 2 * std::numbers::pi / 130.0);
    CHECK(s["final_dist"].get<double>() <= 2e-3);
    CHECK(s["domain_condition_max_error"].get<double>() <= 5e-3);
    CHECK(parse_config(read_json(dir / "config.json")).initial.omega == 0.4);

    const auto rows = read_csv(dir / "spectrum_0.csv");
    CHECK(rows[0] == std::vector<std::string>{"omega", "density"});
    CHECK(std::stod(rows[1][0]) >= -4.0 - 1e-9);
    CHECK(std::stod(rows.back()[0]) <= 4.0 + 1e-9);
    const auto field = read_csv(dir / "field_20.csv");
    CHECK(field[0] == std::vector<std::string>{"r", "re_psi", "im_psi", "re_psi_dot", "im_psi_dot"});
    CHECK(read_csv(dir / "energy.csv")[0] == std::vector<std::string>{"t", "H", "tail_estimate"});
}

TEST_CASE("spectrum verb reproduces the simulate summary") {
    const auto cfg = small_config("soliton");
    const auto dir = scratch("spectrum");
    std::ostringstream log;
    REQUIRE(run_simulate(cfg, {dir.string(), true}, log) == kExitOk);
    const auto sim = read_json(dir / "summary.json");
    CHECK(fs::exists(dir / "timing.json"));
    const auto dir2 = scratch("spectrum2");
    REQUIRE(run_spectrum(cfg, {dir2.string(), true}, (dir / "trajectory.csv").string(), log) == kExitOk);
    const auto recomputed = read_json(dir2 / "spectrum_summary.json");
    CHECK(recomputed["omega_hat"] == sim["omega_hat"]);
    CHECK(recomputed["concentration_ratio"] == sim["concentration_ratio"]);
    CHECK(recomputed["q_hat"] == sim["q_hat"]);
    std::ifstream f1(dir / "spectrum_0.csv"), f2(dir2 / "spectrum_0.csv");
    std::stringstream s1, s2;
    s1 << f1.rdbuf();
    s2 << f2.rdbuf();
    CHECK(s1.str() == s2.str());
}

TEST_CASE("cli exit codes") {
    const auto dir = scratch("cli");
    std::ofstream(dir / "bad_potential.json") << R"({"model": {"potential": [0.0, 1.0]}})";
    CHECK(run_cli("simulate --config " + (dir / "bad_potential.json").string() + " --out " + dir.string()) == 2);
    std::ofstream(dir / "unknown.json") << R"({"solver": {"dt": 0.1, "T": 1.0, "order": 3}})";
    CHECK(run_cli("simulate --config " + (dir / "unknown.json").string()) == 2);
    std::ofstream(dir / "strict.json") << R"({"verification": {"transform": 1e-20}})";
    CHECK(run_cli("verify-kernels --quiet --config " + (dir / "strict.json").string()) == 1);
    CHECK(run_cli("verify-kernels --quiet") == 0);
    std::ofstream(dir / "heavy.json") << R"({"model": {"m": 2.5}})";
    CHECK(run_cli("verify-kernels --quiet --config " + (dir / "heavy.json").string()) == 0);
    std::ofstream(dir / "blowup.json")
        << R"({"solver": {"dt": 0.05, "T": 10.0, "blowup_threshold": 0.5}, "diagnostics": {"energy_times": [5]}})";
    CHECK(run_cli("simulate --quiet --config " + (dir / "blowup.json").string() + " --out " + (dir / "b").string()) == 3);
    CHECK(fs::exists(dir / "b" / "trajectory.csv"));
    CHECK(read_json(dir / "b" / "summary.json")["status"] == "blowup");
    CHECK(run_cli("") != 0);
}

TEST_CASE("soliton-scan table") {
    const auto dir = scratch("scan");
    REQUIRE(run_cli("soliton-scan --quiet --out " + dir.string()) == 0);
    const auto rows = read_csv(dir / "soliton_scan.csv");
    CHECK(rows[0] == std::vector<std::string>{"omega", "root_index", "q", "qsol_residual", "stationary_residual"});
    bool saw_zero = false, saw_lo = false, saw_hi = false;
    std::set<std::string> omegas;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double w = std::stod(rows[i][0]);
        omegas.insert(rows[i][0]);
        CHECK(std::fabs(w) < 1.0);
        CHECK(std::stod(rows[i][3]) <= 1e-10);
        if (w == 0.0) {
            saw_zero = true;
            CHECK(std::fabs(std::stod(rows[i][2]) - std::sqrt(0.5)) <= 1e-10);
        }
        saw_lo = saw_lo || std::fabs(w + 0.999) < 1e-12;
        saw_hi = saw_hi || std::fabs(w - 0.999) < 1e-12;
    }
    CHECK(omegas.size() == 201);
    CHECK(saw_zero);
    CHECK(saw_lo);
    CHECK(saw_hi);
}
