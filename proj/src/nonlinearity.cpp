#include "pointkg/nonlinearity.hpp"

#include <cmath>
#include <string>

#include "pointkg/errors.hpp"

namespace pointkg {

PolynomialPotential::PolynomialPotential(std::vector<double> coefficients)
    : u_(std::move(coefficients)) {
    if (u_.size() < 3) {
        throw ConfigError("potential must have degree N >= 2 (Assumption A: N>=2), got N=" +
                          std::to_string(static_cast<int>(u_.size()) - 1));
    }
    for (double c : u_) {
        if (!std::isfinite(c)) throw ConfigError("potential coefficients must be finite");
    }
    if (!(u_.back() > 0.0)) {
        throw ConfigError("leading potential coefficient u_N must be positive (Assumption A)");
    }
}

PolynomialPotential PolynomialPotential::cubic_quintic() {
    return PolynomialPotential({0.0, -1.0, 1.0});
}

std::vector<double> PolynomialPotential::b_coefficients() const {
    std::vector<double> b(u_.size() - 1);
    for (std::size_t n = 1; n < u_.size(); ++n) b[n - 1] = static_cast<double>(n) * u_[n];
    return b;
}

double potential_U(const PolynomialPotential& p, cplx zeta) {
    const double s = std::norm(zeta);
    const auto u = p.coefficients();
    double acc = 0.0;
    for (std::size_t n = u.size(); n-- > 0;) acc = acc * s + u[n];
    return acc;
}

double radial_b(const PolynomialPotential& p, double s) {
    const auto u = p.coefficients();
    double acc = 0.0;
    for (std::size_t n = u.size() - 1; n >= 1; --n) acc = acc * s + static_cast<double>(n) * u[n];
    return acc;
}

double radial_b_prime(const PolynomialPotential& p, double s) {
    const auto u = p.coefficients();
    double acc = 0.0;
    for (std::size_t n = u.size() - 1; n >= 2; --n) {
        acc = acc * s + static_cast<double>(n * (n - 1)) * u[n];
    }
    return acc;
}

cplx force_F(const PolynomialPotential& p, cplx zeta) {
    return radial_b(p, std::norm(zeta)) * zeta;
}

}  // namespace pointkg
