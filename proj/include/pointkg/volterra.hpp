#pragma once

#include <string>
#include <vector>

#include "pointkg/convolution.hpp"
#include "pointkg/freefield.hpp"
#include "pointkg/nonlinearity.hpp"
#include "pointkg/profiles.hpp"
#include "pointkg/specfun.hpp"

namespace pointkg {

struct SolverConfig {
    double dt = 0.01;
    double T = 50.0;
    ConvMode conv_mode = ConvMode::naive;
    double blowup_threshold = 1e6;
    double corrector_tol = 1e-12;
    int corrector_max_iter = 50;

    /// Throws ConfigError on invalid values; returns the number of steps T/dt.
    std::size_t validate() const;
};

enum class SolveStatus { ok, blowup, corrector_failure };

[[nodiscard]] std::string to_string(SolveStatus s);

/// Uniform samples of zeta on t_k = t0 + k dt together with the trace lambda,
/// the right-hand side zeta_dot and the memory term (K * zeta)(t_k) used by
/// the stepper. A failed solve keeps the valid prefix and reports why.
struct Trajectory {
    double t0 = 0.0;
    double dt = 0.0;
    std::vector<cplx> zeta;
    std::vector<cplx> lam;
    std::vector<cplx> zeta_dot;
    std::vector<cplx> conv;
    SolveStatus status = SolveStatus::ok;
    std::string message;

    [[nodiscard]] std::size_t size() const noexcept { return zeta.size(); }
    [[nodiscard]] double time(std::size_t k) const noexcept { return t0 + static_cast<double>(k) * dt; }
    [[nodiscard]] double t_end() const noexcept { return size() == 0 ? t0 : time(size() - 1); }
    /// Grid index of t; throws InputError if t is off the grid or outside.
    [[nodiscard]] std::size_t index_of(double t) const;
};

/// Integrates zeta' = m zeta - m (K * zeta) - 4 pi F(zeta) + 4 pi lambda
/// from zeta(0) = zeta0 with the trace lambda of the given data.
[[nodiscard]] Trajectory solve_reduced(const RadialState& state, const PolynomialPotential& p, Mass m,
                                       const SolverConfig& cfg,
                                       const QuadratureConfig& quad = freefield_quadrature());

/// Same, with lambda supplied at the grid times t_k = k dt (size T/dt + 1).
[[nodiscard]] Trajectory solve_reduced(cplx zeta0, const std::vector<cplx>& lambda,
                                       const PolynomialPotential& p, Mass m, const SolverConfig& cfg);

/// |(sqrt(m^2 - omega^2) - m)/(4 pi) + b(q^2)|: the limit equation evaluated
/// on eta(t) = q e^{-i omega t} through the closed-form symbol of K.
[[nodiscard]] double stationary_residual(const PolynomialPotential& p, Mass m, double omega, double q);

/// (K * zeta)(t) at a grid time, exactly as used by the stepper when the
/// trajectory carries it, else by direct product-trapezoid summation.
[[nodiscard]] cplx convolution_tail(const Trajectory& traj, double t, Mass m);

}  // namespace pointkg
