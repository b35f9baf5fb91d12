#pragma once

#include <vector>

#include "pointkg/specfun.hpp"

namespace pointkg {

/// Radial samples of (psi, psi_dot) at one time. zeta and eta are the
/// coefficients of the G-singularity of psi and psi_dot; they give the r -> 0
/// behaviour that the grid does not resolve.
struct FieldSnapshot {
    double t = 0.0;
    std::vector<double> r;
    std::vector<cplx> psi;
    std::vector<cplx> psi_dot;
    cplx zeta{};
    cplx eta{};

    /// Throws InputError unless the grid is positive, strictly increasing and
    /// all samples are finite with matching sizes.
    void validate() const;
};

}  // namespace pointkg
