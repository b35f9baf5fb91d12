#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "pointkg/diagnostics.hpp"
#include "pointkg/kernel_checks.hpp"
#include "pointkg/nonlinearity.hpp"
#include "pointkg/profiles.hpp"
#include "pointkg/volterra.hpp"

namespace pointkg {

inline constexpr int kConfigSchemaVersion = 1;

struct Perturbation {
    RadialShape shape = GaussianShape{3.0, 0.5};
    /// L^2 size relative to the unperturbed psi component.
    double relative_size = 0.3;
    /// "psi" adds to psi_reg, "pi" to pi_reg.
    std::string component = "psi";
};

struct InitialDataConfig {
    /// zero | soliton | perturbed_soliton | green | custom
    std::string preset = "soliton";
    double omega = 0.0;
    double theta = 0.0;
    /// Index into the ascending amplitude roots; -1 selects the largest.
    int root_index = -1;
    Perturbation perturbation;
    cplx zeta0{};
    cplx eta0{};
    RadialProfile psi_reg;
    RadialProfile pi_reg;
};

struct GridConfig {
    double dr = 0.05;
    double R_out = 60.0;
};

struct DiagnosticsConfig {
    std::vector<double> attraction_times;
    std::vector<double> energy_times;
    std::vector<double> field_times;
    std::vector<std::pair<double, double>> spectrum_windows;
    Taper taper = Taper::hann;
    int R_max = 10;
    double attraction_dr = 0.05;
    /// Concentration half-width in units of m.
    double delta = 0.05;
};

struct ScanConfig {
    int omega_points = 201;
    double edge = 0.999;  // scan covers [-edge m, edge m]
};

struct OutputConfig {
    std::string directory = "out";
    std::vector<std::string> formats{"csv", "json"};
};

struct RunConfig {
    int schema_version = kConfigSchemaVersion;
    double m = 1.0;
    std::vector<double> potential{0.0, -1.0, 1.0};
    InitialDataConfig initial;
    SolverConfig solver;
    GridConfig grid;
    DiagnosticsConfig diagnostics;
    KernelCheckTolerances verification;
    ScanConfig scan;
    OutputConfig output;

    [[nodiscard]] Mass mass() const { return Mass(m); }
    [[nodiscard]] PolynomialPotential potential_model() const { return PolynomialPotential(potential); }
};

/// Parses and validates; unknown keys and invalid values raise ConfigError.
[[nodiscard]] RunConfig parse_config(const nlohmann::json& j);
[[nodiscard]] RunConfig load_config(const std::string& path);

/// Canonical JSON form with every field present.
[[nodiscard]] nlohmann::json to_json(const RunConfig& cfg);

/// FNV-1a hash of the canonical JSON text, as 16 hex digits.
[[nodiscard]] std::string config_hash(const RunConfig& cfg);

/// Initial data described by the configuration.
[[nodiscard]] RadialState build_state(const RunConfig& cfg);

/// The unperturbed solitary wave of the soliton presets.
[[nodiscard]] SolitaryWave preset_wave(const RunConfig& cfg);

}  // namespace pointkg
