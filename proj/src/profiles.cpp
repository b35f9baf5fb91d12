#include "pointkg/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>

#include "pointkg/errors.hpp"

namespace pointkg {

namespace {

constexpr double kPi = std::numbers::pi;

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// (e^{-ar} - e^{-br})/r and its r-derivative by the Taylor series
// sum_{k>=1} (-1)^{k+1} (b^k - a^k) r^{k-1} / k!.
void yukawa_series(double a, double b, double r, double& val, double& der) {
    val = 0.0;
    der = 0.0;
    double ak = 1.0, bk = 1.0, fact = 1.0, rk = 1.0, rkm1 = 0.0;
    for (int k = 1; k < 40; ++k) {
        ak *= a;
        bk *= b;
        fact *= k;
        const double sign = (k % 2 == 1) ? 1.0 : -1.0;
        const double c = sign * (bk - ak) / fact;
        val += c * rk;
        if (k >= 2) der += c * (k - 1) * rkm1;
        rkm1 = rk;
        rk *= r;
        if (std::fabs(c * rk) < 1e-20 * (std::fabs(val) + 1e-300) && k > 3) break;
    }
}

void yukawa(const YukawaDifferenceShape& s, double r, double& val, double& der) {
    const double x = std::max(s.a, s.b) * r;
    if (x < 0.5) {
        yukawa_series(s.a, s.b, r, val, der);
    } else {
        const double ea = std::exp(-s.a * r);
        const double eb = std::exp(-s.b * r);
        const double f = std::expm1(-s.a * r) - std::expm1(-s.b * r);
        const double fp = -s.a * ea + s.b * eb;
        val = f / r;
        der = (fp * r - f) / (r * r);
    }
    val /= 4.0 * kPi;
    der /= 4.0 * kPi;
}

}  // namespace

struct TableShape::Spline {
    boost::math::interpolators::cardinal_cubic_b_spline<double> s;
};

TableShape::TableShape(std::vector<double> values, double spacing)
    : values_(std::move(values)), spacing_(spacing) {
    if (values_.size() < 4) throw InputError("tabulated profile needs at least 4 samples");
    if (!(spacing_ > 0.0) || !std::isfinite(spacing_)) {
        throw InputError("tabulated profile spacing must be positive");
    }
    double scale = 0.0;
    for (double v : values_) {
        if (!std::isfinite(v)) throw InputError("tabulated profile has non-finite samples");
        scale = std::max(scale, std::fabs(v));
    }
    if (std::fabs(values_.back()) > 1e-8 * std::max(scale, 1e-300) && scale > 0.0) {
        throw InputError("tabulated profile must decay to zero at its last sample");
    }
    extent_ = spacing_ * static_cast<double>(values_.size() - 1);
    spline_ = std::make_shared<const Spline>(
        Spline{boost::math::interpolators::cardinal_cubic_b_spline<double>(values_.begin(), values_.end(), 0.0,
                                                             spacing_)});
}

double TableShape::value(double r) const {
    if (r < 0.0 || !std::isfinite(r)) throw InputError("tabulated profile evaluated at invalid radius");
    if (r >= extent_) return 0.0;
    return spline_->s(r);
}

double TableShape::derivative(double r) const {
    if (r < 0.0 || !std::isfinite(r)) throw InputError("tabulated profile evaluated at invalid radius");
    if (r >= extent_) return 0.0;
    return spline_->s.prime(r);
}

double shape_value(const RadialShape& s, double r) {
    return std::visit(
        Overloaded{
            [r](const GaussianShape& g) {
                const double x = (r - g.center) / g.width;
                return std::exp(-x * x);
            },
            [r](const YukawaDifferenceShape& y) {
                double v, d;
                yukawa(y, r, v, d);
                return v;
            },
            [r](const BumpShape& b) {
                const double x = (r - b.center) / b.width;
                if (std::fabs(x) >= 1.0) return 0.0;
                return std::exp(1.0 - 1.0 / (1.0 - x * x));
            },
            [r](const TableShape& t) { return t.value(r); },
        },
        s);
}

double shape_derivative(const RadialShape& s, double r) {
    return std::visit(
        Overloaded{
            [r](const GaussianShape& g) {
                const double x = (r - g.center) / g.width;
                return -2.0 * x / g.width * std::exp(-x * x);
            },
            [r](const YukawaDifferenceShape& y) {
                double v, d;
                yukawa(y, r, v, d);
                return d;
            },
            [r](const BumpShape& b) {
                const double x = (r - b.center) / b.width;
                if (std::fabs(x) >= 1.0) return 0.0;
                const double one = 1.0 - x * x;
                return std::exp(1.0 - 1.0 / one) * (-2.0 * x / (one * one)) / b.width;
            },
            [r](const TableShape& t) { return t.derivative(r); },
        },
        s);
}

double shape_support(const RadialShape& s) {
    return std::visit(
        Overloaded{
            [](const GaussianShape& g) {
                if (!(g.width > 0.0) || !std::isfinite(g.center) || !std::isfinite(g.width)) {
                    throw InputError("gaussian profile needs finite center and width > 0");
                }
                return std::max(0.0, g.center + 6.5 * g.width);
            },
            [](const YukawaDifferenceShape& y) {
                if (!(y.a > 0.0) || !(y.b > 0.0) || !std::isfinite(y.a) || !std::isfinite(y.b)) {
                    throw InputError("yukawa_difference profile needs finite rates a, b > 0");
                }
                return 40.0 / std::min(y.a, y.b);
            },
            [](const BumpShape& b) {
                if (!(b.width > 0.0) || !std::isfinite(b.center) || !std::isfinite(b.width)) {
                    throw InputError("bump profile needs finite center and width > 0");
                }
                return std::max(0.0, b.center + b.width);
            },
            [](const TableShape& t) { return t.extent(); },
        },
        s);
}

std::string shape_name(const RadialShape& s) {
    return std::visit(Overloaded{
                          [](const GaussianShape&) { return std::string("gaussian"); },
                          [](const YukawaDifferenceShape&) { return std::string("yukawa_difference"); },
                          [](const BumpShape&) { return std::string("bump"); },
                          [](const TableShape&) { return std::string("table"); },
                      },
                      s);
}

cplx RadialProfile::value(double r) const {
    cplx acc{};
    for (const auto& t : terms) acc += t.coefficient * shape_value(t.shape, r);
    return acc;
}

cplx RadialProfile::derivative(double r) const {
    cplx acc{};
    for (const auto& t : terms) acc += t.coefficient * shape_derivative(t.shape, r);
    return acc;
}

double RadialProfile::support() const {
    double s = 0.0;
    for (const auto& t : terms) s = std::max(s, shape_support(t.shape));
    return s;
}

cplx RadialState::domain_defect(const PolynomialPotential& p) const {
    return psi_reg.value(0.0) - force_F(p, zeta0);
}

void RadialState::check_domain(const PolynomialPotential& p, double tol) const {
    const double d = std::abs(domain_defect(p));
    if (!(d <= tol)) {
        throw InputError("initial data violate psi_reg(0) = F(zeta0): defect " + std::to_string(d));
    }
}

RadialState RadialState::scaled(cplx factor) const {
    RadialState out = *this;
    for (auto& t : out.psi_reg.terms) t.coefficient *= factor;
    for (auto& t : out.pi_reg.terms) t.coefficient *= factor;
    out.zeta0 *= factor;
    out.eta0 *= factor;
    return out;
}

RadialState soliton_state(double omega, double q, double theta, Mass m) {
    if (!(std::fabs(omega) < m)) throw DomainError("soliton_state: |omega| must be < m");
    const double g = std::sqrt((m - omega) * (m + omega));
    const cplx amp = std::polar(q, theta);
    const cplx vel = cplx{0.0, -omega} * amp;
    RadialState s;
    const YukawaDifferenceShape shape{g, m.value()};
    s.psi_reg.terms.push_back({amp, shape});
    s.pi_reg.terms.push_back({vel, shape});
    s.zeta0 = amp;
    s.eta0 = vel;
    return s;
}

}  // namespace pointkg
