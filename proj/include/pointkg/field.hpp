#pragma once

#include <vector>

#include "pointkg/freefield.hpp"
#include "pointkg/nonlinearity.hpp"
#include "pointkg/snapshot.hpp"
#include "pointkg/volterra.hpp"

namespace pointkg {

/// zeta at any t in [t0, t_end] by cubic Hermite interpolation of the
/// (zeta, zeta_dot) samples.
[[nodiscard]] cplx interpolate_zeta(const Trajectory& traj, double t);
/// zeta_dot at any t in [t0, t_end] by 4-point Lagrange interpolation.
[[nodiscard]] cplx interpolate_zeta_dot(const Trajectory& traj, double t);

/// Retarded field of the point source:
///   theta(t-r) zeta(t-r)/(4 pi r) - m/(4 pi) int_0^{t-r} L(r, t-s) zeta(s) ds.
[[nodiscard]] cplx psi_S_eval(const Trajectory& traj, double r, double t, Mass m);

/// Time derivative of psi_S, including the zeta(0) term on the cone.
[[nodiscard]] cplx psi_S_dot_eval(const Trajectory& traj, double r, double t, Mass m);

/// Uniform grid dr, 2 dr, ..., R_out.
[[nodiscard]] std::vector<double> uniform_grid(double dr, double R_out);

/// Full field psi = psi_f + psi_S and psi_dot on the grid at a grid time t.
[[nodiscard]] FieldSnapshot snapshot(const RadialState& state, const Trajectory& traj, double t,
                                     const std::vector<double>& grid, Mass m,
                                     const QuadratureConfig& quad = freefield_quadrature());

/// (int_0^R (|psi|^2 + |psi_dot|^2) 4 pi r^2 dr)^{1/2}.
[[nodiscard]] double local_norm(const FieldSnapshot& snap, double R);

/// psi_reg(0) extrapolated quadratically from the three innermost samples of psi - zeta G.
[[nodiscard]] cplx psi_reg_at_origin(const FieldSnapshot& snap, Mass m);

struct EnergyOptions {
    double tail_tolerance = 1e-6;
};

struct EnergyValue {
    double H = 0.0;             // field part + U(zeta)/2
    double field = 0.0;         // (|psi_dot|^2 + |grad psi_reg|^2 + m^2 |psi_reg|^2)/2 on [0, R_out]
    double potential = 0.0;     // U(zeta)
    double tail_estimate = 0.0; // upper estimate of the field energy beyond R_out
    bool tail_warning = false;  // |psi_reg(R_out)| above tail_tolerance
};

/// Conserved energy of the coupled system. The field part uses psi_reg =
/// psi - zeta G with 4th-order differences for the radial derivative; the
/// grid must be uniform.
[[nodiscard]] EnergyValue energy(const FieldSnapshot& snap, const PolynomialPotential& p, Mass m,
                                 const EnergyOptions& opts = {});

}  // namespace pointkg
