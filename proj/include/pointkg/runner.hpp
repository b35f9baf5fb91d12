#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "pointkg/config.hpp"
#include "pointkg/diagnostics.hpp"
#include "pointkg/field.hpp"
#include "pointkg/volterra.hpp"

namespace pointkg {

inline constexpr int kSummarySchemaVersion = 1;

enum ExitCode : int { kExitOk = 0, kExitCheckFailed = 1, kExitConfig = 2, kExitNumerical = 3 };

struct WindowStats {
    double t1 = 0.0;
    double t2 = 0.0;
    double mass = 0.0;
    bool defined = false;  // false for an all-zero window
    double omega_hat = 0.0;
    double concentration_ratio = 0.0;
    double gap_fraction = 0.0;
    double outside_gap_weighted_mass = 0.0;
};

struct SimulationResult {
    RadialState state;
    Trajectory traj;
    std::vector<std::pair<double, EnergyValue>> energies;
    std::vector<double> domain_errors;  // |psi_reg(0) - F(zeta)| at the energy snapshots
    std::vector<AttractionPoint> attraction;
    std::vector<SpectrumWindow> spectra;
    std::vector<WindowStats> windows;
    std::vector<FieldSnapshot> fields;
    nlohmann::json summary;
};

/// Stats of one window; an all-zero window yields defined = false.
[[nodiscard]] WindowStats window_stats(const SpectrumWindow& sw, Mass m, double delta);

/// Summary of spectral windows and amplitude statistics of a trajectory.
[[nodiscard]] nlohmann::json spectral_summary(const Trajectory& traj, const std::vector<WindowStats>& windows,
                                              const PolynomialPotential& p, Mass m);

/// Runs the whole experiment in memory.
[[nodiscard]] SimulationResult simulate(const RunConfig& cfg);

struct RunOptions {
    std::string out_dir;
    bool quiet = false;
};

[[nodiscard]] std::string format_double(double x);

void write_trajectory_csv(const std::string& path, const Trajectory& traj);
/// Reads t, zeta and lambda columns back; the grid must be uniform.
[[nodiscard]] Trajectory read_trajectory_csv(const std::string& path);
void write_spectrum_csv(const std::string& path, const SpectrumWindow& sw, Mass m);
void write_field_csv(const std::string& path, const FieldSnapshot& s);
void write_outputs(const SimulationResult& res, const RunConfig& cfg, const std::string& dir);

int run_simulate(const RunConfig& cfg, const RunOptions& opts, std::ostream& log);
int run_verify_kernels(const RunConfig& cfg, const RunOptions& opts, std::ostream& log);
int run_soliton_scan(const RunConfig& cfg, const RunOptions& opts, std::ostream& log);
int run_spectrum(const RunConfig& cfg, const RunOptions& opts, const std::string& trajectory_csv,
                 std::ostream& log);

}  // namespace pointkg
