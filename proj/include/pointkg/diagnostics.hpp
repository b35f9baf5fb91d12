#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pointkg/field.hpp"
#include "pointkg/nonlinearity.hpp"
#include "pointkg/solitary.hpp"
#include "pointkg/volterra.hpp"

namespace pointkg {

enum class Taper { hann, rect };

[[nodiscard]] std::string to_string(Taper t);
[[nodiscard]] Taper parse_taper(const std::string& s);

/// Density |Z(omega)|^2 / (2 pi) of Z(omega) = int e^{i omega t} w(t) zeta(t) dt
/// over a window, on a symmetric uniform grid. Summing density * d_omega
/// over the grid gives int |w zeta|^2 dt.
struct SpectrumWindow {
    double t1 = 0.0;
    double t2 = 0.0;
    Taper taper = Taper::hann;
    std::vector<double> omega;
    std::vector<double> density;
    double d_omega = 0.0;

    /// Frequency resolution 2 pi / (t2 - t1); the "bin" of the diagnostics.
    [[nodiscard]] double resolution() const noexcept { return 2.0 * 3.14159265358979323846 / (t2 - t1); }
    [[nodiscard]] double total_mass() const;
};

/// Windowed spectrum on [t1, t2] (grid times), zero padded at least 8x.
/// Needs at least 1024 samples, t2 - t1 >= 20 (2 pi / m) and a Nyquist
/// frequency of at least 4 m.
[[nodiscard]] SpectrumWindow windowed_spectrum(const Trajectory& traj, double t1, double t2, Taper taper,
                                               Mass m, int pad_factor = 8);

/// Riemann sum dt sum |w zeta|^2 that the spectrum mass reproduces.
[[nodiscard]] double windowed_mass(const Trajectory& traj, double t1, double t2, Taper taper);

struct Concentration {
    double omega_hat = 0.0;
    double ratio = 0.0;
};

/// Centroid within two bins of the peak and the mass fraction within delta of it.
[[nodiscard]] Concentration concentration(const SpectrumWindow& sw, double delta);

/// Mass fraction on the gap [-m, m].
[[nodiscard]] double gap_mass_fraction(const SpectrumWindow& sw, Mass m);

/// sum over |omega| > m of density * kappa(omega)/omega * d_omega.
[[nodiscard]] double outside_gap_weighted_mass(const SpectrumWindow& sw, Mass m);

struct DecayFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

/// Least-squares line through (log t, log value).
[[nodiscard]] DecayFit decay_fit(const std::vector<std::pair<double, double>>& series);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
};

/// Least-squares line through (x, y).
[[nodiscard]] LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

struct AttractionPoint {
    double t = 0.0;
    double dist = 0.0;
    SolitaryWave best;
};

/// manifold_distance of the snapshots at the given grid times.
[[nodiscard]] std::vector<AttractionPoint> attraction_series(const RadialState& state, const Trajectory& traj,
                                                             const std::vector<double>& times,
                                                             const PolynomialPotential& p, Mass m, int R_max,
                                                             double dr,
                                                             const QuadratureConfig& quad = freefield_quadrature());

/// ||(psi_f, psi_f_dot)(t)||_{L^2(B_R)} of the free evolution alone.
[[nodiscard]] double free_local_norm(const RadialState& state, double t, double R, double dr, Mass m,
                                     const QuadratureConfig& quad = freefield_quadrature());

}  // namespace pointkg
