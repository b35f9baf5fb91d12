#pragma once

#include <string>
#include <vector>

#include "pointkg/specfun.hpp"

namespace pointkg {

struct KernelCheckTolerances {
    double transform = 1e-6;      // |FT[K] - K_hat| on the gap grid
    double limit = 1e-8;          // |L_hat(r -> 0) - K_hat|
    double bessel = 1e-12;        // |J1 - reference series| on (0, 20]
    double derivative = 1e-6;     // d/dx (x J1) = x J0 by central differences
    double envelope = 1.0;        // max |K(t)| (1+t)^{3/2} on [10, 1000]
    double cone = 1e-10;          // |L(r, r+eps) - m/2| for small eps
    double horizon = 2000.0;      // truncation time of the transform quadrature
    int frequencies = 101;        // gap grid in [-0.99 m, 0.99 m]
};

struct CheckResult {
    std::string name;
    double measured = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

/// Numerical Fourier transform of K on [0, T] plus the asymptotic tail
/// beyond T, at frequency omega.
[[nodiscard]] cplx kernel_transform(double omega, Mass m, double T);

/// J1 by its power series in 50-digit arithmetic.
[[nodiscard]] double bessel_j1_reference(double x);

[[nodiscard]] std::vector<CheckResult> run_kernel_checks(Mass m, const KernelCheckTolerances& tol = {});

}  // namespace pointkg
