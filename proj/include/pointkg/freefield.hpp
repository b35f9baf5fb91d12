#pragma once

#include <vector>

#include "pointkg/profiles.hpp"
#include "pointkg/quadrature.hpp"
#include "pointkg/specfun.hpp"

namespace pointkg {

struct FreeFieldValue {
    cplx psi{};
    cplx psi_dot{};
};

/// Quadrature defaults for the free-field integrals.
[[nodiscard]] QuadratureConfig freefield_quadrature();

/// Trace lambda(t) = lim_{x->0} psi_f(x, t) of the free evolution of the data.
/// At t = 0 the one-sided limit t -> 0+ is returned.
[[nodiscard]] cplx lambda_trace(const RadialState& state, double t, Mass m,
                                const QuadratureConfig& quad = freefield_quadrature());

/// lambda at t_k = k dt, k = 0..n-1, evaluated in parallel.
[[nodiscard]] std::vector<cplx> lambda_samples(const RadialState& state, double dt, std::size_t n,
                                               Mass m,
                                               const QuadratureConfig& quad = freefield_quadrature());

/// (psi_f, d/dt psi_f) at radius rho > 0 and time t >= 0.
[[nodiscard]] FreeFieldValue freefield_eval(const RadialState& state, double rho, double t, Mass m,
                                            const QuadratureConfig& quad = freefield_quadrature());

}  // namespace pointkg
