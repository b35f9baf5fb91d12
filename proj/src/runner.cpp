#include "pointkg/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "pointkg/errors.hpp"
#include "pointkg/solitary.hpp"

namespace pointkg {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

json number_or_null(double x, bool defined = true) {
    if (!defined || !std::isfinite(x)) return nullptr;
    return x;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    return out;
}

void write_json(const std::string& path, const json& j) {
    auto out = open_out(path);
    out << j.dump(2) << '\n';
}

std::string time_label(double t) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", t);
    return buf;
}

bool wants(const RunConfig& cfg, const std::string& fmt) {
    return std::find(cfg.output.formats.begin(), cfg.output.formats.end(), fmt) != cfg.output.formats.end();
}

}  // namespace

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

WindowStats window_stats(const SpectrumWindow& sw, Mass m, double delta) {
    WindowStats w;
    w.t1 = sw.t1;
    w.t2 = sw.t2;
    w.mass = sw.total_mass();
    w.outside_gap_weighted_mass = outside_gap_weighted_mass(sw, m);
    if (w.mass > 0.0) {
        const Concentration c = concentration(sw, delta);
        w.defined = true;
        w.omega_hat = c.omega_hat;
        w.concentration_ratio = c.ratio;
        w.gap_fraction = gap_mass_fraction(sw, m);
    }
    return w;
}

json spectral_summary(const Trajectory& traj, const std::vector<WindowStats>& windows,
                      const PolynomialPotential& p, Mass m) {
    json s;
    double sup = 0.0;
    for (const auto& z : traj.zeta) sup = std::max(sup, std::abs(z));
    s["sup_abs_zeta"] = sup;

    // Trend of |zeta| over the second half of the run.
    std::vector<double> tt, aa;
    for (std::size_t k = traj.size() / 2; k < traj.size(); ++k) {
        tt.push_back(traj.time(k));
        aa.push_back(std::abs(traj.zeta[k]));
    }
    s["late_abs_zeta_slope"] = tt.size() >= 2 ? json(linear_fit(tt, aa).slope) : json(nullptr);

    json arr = json::array();
    for (const auto& w : windows) {
        arr.push_back({{"t1", w.t1},
                       {"t2", w.t2},
                       {"mass", w.mass},
                       {"omega_hat", number_or_null(w.omega_hat, w.defined)},
                       {"concentration_ratio", number_or_null(w.concentration_ratio, w.defined)},
                       {"gap_fraction", number_or_null(w.gap_fraction, w.defined)},
                       {"outside_gap_weighted_mass", w.outside_gap_weighted_mass}});
    }
    s["windows"] = arr;

    s["omega_hat"] = nullptr;
    s["q_hat"] = nullptr;
    s["concentration_ratio"] = nullptr;
    s["gap_fraction"] = nullptr;
    s["qsol_residual"] = nullptr;
    if (!windows.empty() && windows.back().defined) {
        const auto& w = windows.back();
        const std::size_t k1 = traj.index_of(w.t1);
        const std::size_t k2 = traj.index_of(w.t2);
        double q = 0.0;
        for (std::size_t k = k1; k <= k2; ++k) q += std::abs(traj.zeta[k]);
        q /= static_cast<double>(k2 - k1 + 1);
        s["omega_hat"] = w.omega_hat;
        s["q_hat"] = q;
        s["concentration_ratio"] = w.concentration_ratio;
        s["gap_fraction"] = w.gap_fraction;
        if (std::fabs(w.omega_hat) < m) s["qsol_residual"] = qsol_residual(p, m, w.omega_hat, q);
    }
    return s;
}

SimulationResult simulate(const RunConfig& cfg) {
    const Mass m = cfg.mass();
    const PolynomialPotential p = cfg.potential_model();
    SimulationResult res;
    res.state = build_state(cfg);
    res.traj = solve_reduced(res.state, p, m, cfg.solver);
    const bool ok = res.traj.status == SolveStatus::ok;

    json summary;
    summary["schema_version"] = kSummarySchemaVersion;
    summary["config_hash"] = config_hash(cfg);
    summary["status"] = to_string(res.traj.status);
    summary["message"] = res.traj.message;
    summary["t_end"] = res.traj.t_end();
    summary["steps"] = res.traj.size() == 0 ? 0 : res.traj.size() - 1;
    summary["zeta_dot0_minus_eta0"] = std::abs(res.traj.zeta_dot.front() - res.state.eta0);

    if (ok) {
        const auto grid = uniform_grid(cfg.grid.dr, cfg.grid.R_out);
        for (double t : cfg.diagnostics.energy_times) {
            const FieldSnapshot s = snapshot(res.state, res.traj, t, grid, m);
            res.energies.emplace_back(s.t, energy(s, p, m));
            res.domain_errors.push_back(std::abs(psi_reg_at_origin(s, m) - force_F(p, s.zeta)));
        }
        for (double t : cfg.diagnostics.field_times) {
            res.fields.push_back(snapshot(res.state, res.traj, t, grid, m));
        }
        res.attraction = attraction_series(res.state, res.traj, cfg.diagnostics.attraction_times, p, m,
                                           cfg.diagnostics.R_max, cfg.diagnostics.attraction_dr);
        for (const auto& [a, b] : cfg.diagnostics.spectrum_windows) {
            res.spectra.push_back(windowed_spectrum(res.traj, a, b, cfg.diagnostics.taper, m));
            res.windows.push_back(window_stats(res.spectra.back(), m, cfg.diagnostics.delta * m));
        }
    }

    const json spectral = spectral_summary(res.traj, res.windows, p, m);
    for (const auto& [k, v] : spectral.items()) summary[k] = v;

    json energy_json;
    if (!res.energies.empty()) {
        const double H0 = res.energies.front().second.H;
        double drift = 0.0, tail = 0.0;
        bool warn = false;
        for (const auto& [t, e] : res.energies) {
            drift = std::max(drift, std::fabs(e.H - H0) / std::max(std::fabs(H0), 1e-300));
            tail = std::max(tail, e.tail_estimate);
            warn = warn || e.tail_warning;
        }
        energy_json = {{"H_initial", H0},
                       {"max_relative_drift", H0 != 0.0 ? json(drift) : json(nullptr)},
                       {"max_tail_estimate", tail},
                       {"tail_warning", warn}};
    }
    summary["energy"] = energy_json;
    summary["domain_condition_max_error"] =
        res.domain_errors.empty() ? json(nullptr)
                                  : json(*std::max_element(res.domain_errors.begin(), res.domain_errors.end()));
    if (!res.attraction.empty()) {
        const auto& a = res.attraction.back();
        summary["final_dist"] = a.dist;
        summary["final_best_wave"] = {{"omega", a.best.omega}, {"q", a.best.q}, {"theta", a.best.theta}};
    } else {
        summary["final_dist"] = nullptr;
        summary["final_best_wave"] = nullptr;
    }
    res.summary = summary;
    return res;
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
    auto out = open_out(path);
    out << "t,re_zeta,im_zeta,abs_zeta,re_lambda,im_lambda\n";
    for (std::size_t k = 0; k < traj.size(); ++k) {
        out << format_double(traj.time(k)) << ',' << format_double(traj.zeta[k].real()) << ','
            << format_double(traj.zeta[k].imag()) << ',' << format_double(std::abs(traj.zeta[k])) << ','
            << format_double(traj.lam[k].real()) << ',' << format_double(traj.lam[k].imag()) << '\n';
    }
}

Trajectory read_trajectory_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open trajectory file " + path);
    std::string line;
    std::getline(in, line);
    if (line.rfind("t,re_zeta,im_zeta", 0) != 0) {
        throw InputError(path + ": expected header starting with t,re_zeta,im_zeta");
    }
    std::vector<double> t;
    Trajectory tr;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> v;
        while (std::getline(ss, cell, ',')) v.push_back(std::stod(cell));
        if (v.size() < 6) throw InputError(path + ": short row");
        t.push_back(v[0]);
        tr.zeta.emplace_back(v[1], v[2]);
        tr.lam.emplace_back(v[4], v[5]);
    }
    if (t.size() < 2) throw InputError(path + ": need at least two samples");
    tr.t0 = t[0];
    tr.dt = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (std::fabs(t[k] - tr.time(k)) > 1e-9 * std::max(1.0, std::fabs(t[k]))) {
            throw InputError(path + ": time grid is not uniform");
        }
    }
    return tr;
}

void write_spectrum_csv(const std::string& path, const SpectrumWindow& sw, Mass m) {
    auto out = open_out(path);
    out << "omega,density\n";
    for (std::size_t i = 0; i < sw.omega.size(); ++i) {
        if (std::fabs(sw.omega[i]) > 4.0 * m + 1e-12) continue;
        out << format_double(sw.omega[i]) << ',' << format_double(sw.density[i]) << '\n';
    }
}

void write_field_csv(const std::string& path, const FieldSnapshot& s) {
    auto out = open_out(path);
    out << "r,re_psi,im_psi,re_psi_dot,im_psi_dot\n";
    for (std::size_t i = 0; i < s.r.size(); ++i) {
        out << format_double(s.r[i]) << ',' << format_double(s.psi[i].real()) << ','
            << format_double(s.psi[i].imag()) << ',' << format_double(s.psi_dot[i].real()) << ','
            << format_double(s.psi_dot[i].imag()) << '\n';
    }
}

void write_outputs(const SimulationResult& res, const RunConfig& cfg, const std::string& dir) {
    fs::create_directories(dir);
    const Mass m = cfg.mass();
    if (wants(cfg, "csv")) {
        write_trajectory_csv(dir + "/trajectory.csv", res.traj);
        {
            auto out = open_out(dir + "/energy.csv");
            out << "t,H,tail_estimate\n";
            for (const auto& [t, e] : res.energies) {
                out << format_double(t) << ',' << format_double(e.H) << ',' << format_double(e.tail_estimate) << '\n';
            }
        }
        {
            auto out = open_out(dir + "/attraction.csv");
            out << "t,dist,omega_best,q_best\n";
            for (const auto& a : res.attraction) {
                out << format_double(a.t) << ',' << format_double(a.dist) << ',' << format_double(a.best.omega)
                    << ',' << format_double(a.best.q) << '\n';
            }
        }
        for (std::size_t k = 0; k < res.spectra.size(); ++k) {
            write_spectrum_csv(dir + "/spectrum_" + std::to_string(k) + ".csv", res.spectra[k], m);
        }
        for (const auto& f : res.fields) write_field_csv(dir + "/field_" + time_label(f.t) + ".csv", f);
    }
    if (wants(cfg, "json")) {
        write_json(dir + "/summary.json", res.summary);
        write_json(dir + "/config.json", to_json(cfg));
    }
}

int run_simulate(const RunConfig& cfg, const RunOptions& opts, std::ostream& log) {
    const auto start = std::chrono::steady_clock::now();
    const std::string dir = opts.out_dir.empty() ? cfg.output.directory : opts.out_dir;
    if (!opts.quiet) log << "simulate: preset " << cfg.initial.preset << ", T = " << cfg.solver.T << ", dt = "
                         << cfg.solver.dt << '\n';
    const SimulationResult res = simulate(cfg);
    write_outputs(res, cfg, dir);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_json(dir + "/timing.json", {{"runtime_seconds", seconds}});
    if (res.traj.status != SolveStatus::ok) {
        log << "numerical fault: " << res.traj.message << '\n';
        return kExitNumerical;
    }
    if (!opts.quiet) {
        log << "status ok; outputs in " << dir << " (" << format_double(seconds) << " s)\n";
        if (!res.summary["final_dist"].is_null()) log << "final dist " << res.summary["final_dist"] << '\n';
        if (!res.summary["omega_hat"].is_null()) {
            log << "omega_hat " << res.summary["omega_hat"] << ", q_hat " << res.summary["q_hat"]
                << ", qsol residual " << res.summary["qsol_residual"] << '\n';
        }
    }
    return kExitOk;
}

int run_verify_kernels(const RunConfig& cfg, const RunOptions& opts, std::ostream& log) {
    const auto results = run_kernel_checks(cfg.mass(), cfg.verification);
    bool all = true;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-26s %-12s %-12s %s\n", "check", "measured", "tolerance", "result");
    log << buf;
    json rows = json::array();
    for (const auto& r : results) {
        all = all && r.pass;
        std::snprintf(buf, sizeof buf, "%-26s %-12.4e %-12.4e %s\n", r.name.c_str(), r.measured, r.tolerance,
                      r.pass ? "PASS" : "FAIL");
        log << buf;
        rows.push_back({{"check", r.name}, {"measured", r.measured}, {"tolerance", r.tolerance}, {"pass", r.pass}});
    }
    if (!opts.out_dir.empty()) {
        fs::create_directories(opts.out_dir);
        write_json(opts.out_dir + "/verify_kernels.json",
                   {{"m", cfg.m}, {"config_hash", config_hash(cfg)}, {"checks", rows}, {"all_pass", all}});
    }
    return all ? kExitOk : kExitCheckFailed;
}

int run_soliton_scan(const RunConfig& cfg, const RunOptions& opts, std::ostream& log) {
    const Mass m = cfg.mass();
    const PolynomialPotential p = cfg.potential_model();
    const std::string dir = opts.out_dir.empty() ? cfg.output.directory : opts.out_dir;
    fs::create_directories(dir);
    auto out = open_out(dir + "/soliton_scan.csv");
    out << "omega,root_index,q,qsol_residual,stationary_residual\n";
    const int n = cfg.scan.omega_points;
    double worst = 0.0;
    std::size_t rows = 0;
    for (int j = 0; j < n; ++j) {
        double w = m * cfg.scan.edge * (-1.0 + 2.0 * j / (n - 1.0));
        if (2 * j == n - 1) w = 0.0;
        const auto roots = solve_amplitudes(p, w, m);
        if (roots.empty()) {
            out << format_double(w) << ",-1,nan,nan,nan\n";
            continue;
        }
        for (std::size_t i = 0; i < roots.size(); ++i) {
            const double r1 = qsol_residual(p, m, w, roots[i]);
            const double r2 = stationary_residual(p, m, w, roots[i]);
            worst = std::max(worst, r1);
            out << format_double(w) << ',' << i << ',' << format_double(roots[i]) << ',' << format_double(r1) << ','
                << format_double(r2) << '\n';
            ++rows;
        }
    }
    if (!opts.quiet) {
        log << "soliton-scan: " << rows << " roots at " << n << " frequencies, worst residual "
            << format_double(worst) << "; written to " << dir << "/soliton_scan.csv\n";
    }
    return kExitOk;
}

int run_spectrum(const RunConfig& cfg, const RunOptions& opts, const std::string& trajectory_csv,
                 std::ostream& log) {
    const Mass m = cfg.mass();
    const std::string dir = opts.out_dir.empty() ? cfg.output.directory : opts.out_dir;
    const Trajectory traj = read_trajectory_csv(trajectory_csv);
    if (traj.t0 != 0.0) throw InputError("trajectory must start at t = 0");
    fs::create_directories(dir);
    std::vector<WindowStats> stats;
    for (std::size_t k = 0; k < cfg.diagnostics.spectrum_windows.size(); ++k) {
        const auto [a, b] = cfg.diagnostics.spectrum_windows[k];
        const SpectrumWindow sw = windowed_spectrum(traj, a, b, cfg.diagnostics.taper, m);
        write_spectrum_csv(dir + "/spectrum_" + std::to_string(k) + ".csv", sw, m);
        stats.push_back(window_stats(sw, m, cfg.diagnostics.delta * m));
    }
    json s = spectral_summary(traj, stats, cfg.potential_model(), m);
    s["schema_version"] = kSummarySchemaVersion;
    s["config_hash"] = config_hash(cfg);
    s["source"] = fs::path(trajectory_csv).filename().string();
    write_json(dir + "/spectrum_summary.json", s);
    if (!opts.quiet) log << "spectrum: " << stats.size() << " windows written to " << dir << '\n';
    return kExitOk;
}

}  // namespace pointkg
