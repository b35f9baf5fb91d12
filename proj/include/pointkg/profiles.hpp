#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "pointkg/nonlinearity.hpp"
#include "pointkg/specfun.hpp"

namespace pointkg {

/// exp(-((r - center)/width)^2).
struct GaussianShape {
    double center = 0.0;
    double width = 1.0;
};

/// (e^{-a r} - e^{-b r}) / (4 pi r), finite at r = 0 with value (b - a)/(4 pi).
struct YukawaDifferenceShape {
    double a = 0.0;
    double b = 1.0;
};

/// exp(1 - 1/(1 - x^2)) for |x| < 1 with x = (r - center)/width, else 0.
struct BumpShape {
    double center = 0.0;
    double width = 1.0;
};

/// Uniform samples on r = 0, h, 2h, ... interpolated by a cubic B-spline and
/// taken as zero beyond the last sample.
class TableShape {
public:
    TableShape(std::vector<double> values, double spacing);
    [[nodiscard]] double value(double r) const;
    [[nodiscard]] double derivative(double r) const;
    [[nodiscard]] double extent() const noexcept { return extent_; }
    [[nodiscard]] const std::vector<double>& samples() const noexcept { return values_; }
    [[nodiscard]] double spacing() const noexcept { return spacing_; }

private:
    struct Spline;
    std::vector<double> values_;
    double spacing_;
    double extent_;
    std::shared_ptr<const Spline> spline_;
};

using RadialShape = std::variant<GaussianShape, YukawaDifferenceShape, BumpShape, TableShape>;

[[nodiscard]] double shape_value(const RadialShape& s, double r);
[[nodiscard]] double shape_derivative(const RadialShape& s, double r);
/// Radius beyond which the shape is below 1e-17 of its scale (exactly zero for bump/table).
[[nodiscard]] double shape_support(const RadialShape& s);
[[nodiscard]] std::string shape_name(const RadialShape& s);

struct ProfileTerm {
    cplx coefficient;
    RadialShape shape;
};

/// Finite linear combination of real shapes with complex coefficients.
struct RadialProfile {
    std::vector<ProfileTerm> terms;

    [[nodiscard]] cplx value(double r) const;
    [[nodiscard]] cplx derivative(double r) const;
    [[nodiscard]] double support() const;
    [[nodiscard]] bool empty() const noexcept { return terms.empty(); }
};

/// Radial initial data psi0 = psi_reg + zeta0 G, pi0 = pi_reg + eta0 G.
struct RadialState {
    RadialProfile psi_reg;
    RadialProfile pi_reg;
    cplx zeta0{};
    cplx eta0{};

    /// psi_reg(0) - F(zeta0); zero for data in the domain of the generator.
    [[nodiscard]] cplx domain_defect(const PolynomialPotential& p) const;
    /// Throws InputError if |domain_defect| > tol.
    void check_domain(const PolynomialPotential& p, double tol = 1e-10) const;

    /// Multiply all data by a complex constant.
    [[nodiscard]] RadialState scaled(cplx factor) const;
};

/// Data of the solitary wave q e^{i theta} e^{-kappa r}/(4 pi r) with
/// velocity -i omega times the profile.
[[nodiscard]] RadialState soliton_state(double omega, double q, double theta, Mass m);

}  // namespace pointkg
