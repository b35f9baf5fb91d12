#pragma once

#include <vector>

#include "pointkg/nonlinearity.hpp"
#include "pointkg/snapshot.hpp"
#include "pointkg/specfun.hpp"

namespace pointkg {

struct SolitaryWave {
    double omega = 0.0;
    double q = 0.0;
    double theta = 0.0;
};

/// |m - sqrt(m^2 - omega^2) - 4 pi b(q^2)|.
[[nodiscard]] double qsol_residual(const PolynomialPotential& p, Mass m, double omega, double q);

/// All q >= 0 with 4 pi b(q^2) = m - sqrt(m^2 - omega^2), ascending.
/// Throws DomainError for |omega| >= m.
[[nodiscard]] std::vector<double> solve_amplitudes(const PolynomialPotential& p, double omega, Mass m);

/// q e^{i theta} e^{-sqrt(m^2-omega^2) r} / (4 pi r).
[[nodiscard]] cplx soliton_profile(const SolitaryWave& w, double r, Mass m);

struct ManifoldSearch {
    int omega_points = 201;
    int refine_iterations = 60;
    int phase_iterations = 8;
};

struct ManifoldFit {
    double dist = 0.0;
    SolitaryWave best;
    bool zero_wave = true;
};

/// Truncated local distance sum_{R=1}^{R_max} 2^{-R} d_R / (1 + d_R) from the
/// snapshot to the nearest solitary wave (psi_w, -i omega psi_w), including
/// the zero wave.
[[nodiscard]] ManifoldFit manifold_distance(const FieldSnapshot& snap, const PolynomialPotential& p,
                                            Mass m, int R_max, const ManifoldSearch& opts = {});

}  // namespace pointkg
