#pragma once

#include <span>
#include <vector>

#include "pointkg/specfun.hpp"

namespace pointkg {

/// U(zeta) = sum_{n=0}^{N} u_n |zeta|^{2n} with N >= 2 and u_N > 0.
class PolynomialPotential {
public:
    explicit PolynomialPotential(std::vector<double> coefficients);

    /// The default "cubic-quintic" preset: u = (0, -1, 1).
    static PolynomialPotential cubic_quintic();

    [[nodiscard]] int degree() const noexcept { return static_cast<int>(u_.size()) - 1; }
    [[nodiscard]] std::span<const double> coefficients() const noexcept { return u_; }

    /// Coefficients of b(s) = u'(s) = sum n u_n s^{n-1}, lowest order first.
    [[nodiscard]] std::vector<double> b_coefficients() const;

private:
    std::vector<double> u_;
};

[[nodiscard]] double potential_U(const PolynomialPotential& p, cplx zeta);
[[nodiscard]] double radial_b(const PolynomialPotential& p, double s);
/// b'(s), used for corrector contraction estimates.
[[nodiscard]] double radial_b_prime(const PolynomialPotential& p, double s);
[[nodiscard]] cplx force_F(const PolynomialPotential& p, cplx zeta);

}  // namespace pointkg
