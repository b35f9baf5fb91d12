#include "pointkg/freefield.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "pointkg/errors.hpp"

namespace pointkg {

namespace {

constexpr double kPi = std::numbers::pi;

// Odd extensions phi(y) = y f(|y|) of the full radial data f = f_reg + c G,
// where y G(|y|) = sign(y) e^{-m|y|} / (4 pi).
class OddData {
public:
    OddData(const RadialProfile& reg, cplx coef, double m) : reg_(reg), coef_(coef), m_(m) {}

    cplx value(double y) const {
        const double a = std::fabs(y);
        cplx v = y * reg_.value(a);
        if (coef_ != cplx{}) v += std::copysign(1.0, y) * coef_ * std::exp(-m_ * a) / (4.0 * kPi);
        return v;
    }

    // phi'(y), even in y; at y = 0 the one-sided limit from y > 0.
    cplx derivative(double y) const {
        const double a = std::fabs(y);
        cplx d = reg_.value(a) + a * reg_.derivative(a);
        if (coef_ != cplx{}) d -= m_ * coef_ * std::exp(-m_ * a) / (4.0 * kPi);
        return d;
    }

    double support() const {
        double s = reg_.empty() ? 0.0 : reg_.support();
        if (coef_ != cplx{}) s = std::max(s, 45.0 / m_);
        return s;
    }

private:
    const RadialProfile& reg_;
    cplx coef_;
    double m_;
};

void check_time(double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw InputError("free field needs finite t >= 0");
}

}  // namespace

QuadratureConfig freefield_quadrature() {
    QuadratureConfig q;
    q.abs_tol = 1e-14;
    q.rel_tol = 1e-12;
    q.initial_panel = 1.0;
    q.max_intervals = 20000;
    return q;
}

cplx lambda_trace(const RadialState& state, double t, Mass m, const QuadratureConfig& quad) {
    check_time(t);
    const double mv = m.value();
    const OddData f(state.psi_reg, state.zeta0, mv);
    const OddData g(state.pi_reg, state.eta0, mv);
    if (t == 0.0) return f.derivative(0.0) + g.value(0.0);

    const double top = std::min(t, std::max(f.support(), g.support()));
    auto integrand = [&](double y) {
        const double w2 = (t - y) * (t + y);
        const BesselScaled b = bessel_scaled(mv * std::sqrt(std::max(w2, 0.0)));
        const double k1 = mv * b.j1_over_x;
        return std::array<cplx, 2>{y * f.value(y) * b.j2_over_x2, y * g.value(y) * k1};
    };
    std::array<cplx, 2> I{};
    if (top > 0.0) I = integrate(integrand, 0.0, top, quad).value;

    const double m2 = mv * mv;
    return f.derivative(t) - 0.5 * m2 * t * f.value(t) + m2 * m2 * t * I[0] + g.value(t) -
           mv * I[1];
}

std::vector<cplx> lambda_samples(const RadialState& state, double dt, std::size_t n, Mass m,
                                 const QuadratureConfig& quad) {
    std::vector<cplx> out(n);
    const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 4)
    for (long long k = 0; k < count; ++k) {
        out[k] = lambda_trace(state, static_cast<double>(k) * dt, m, quad);
    }
    return out;
}

FreeFieldValue freefield_eval(const RadialState& state, double rho, double t, Mass m,
                              const QuadratureConfig& quad) {
    if (!(rho > 0.0) || !std::isfinite(rho)) throw DomainError("freefield_eval needs rho > 0");
    check_time(t);
    const double mv = m.value();
    const OddData f(state.psi_reg, state.zeta0, mv);
    const OddData g(state.pi_reg, state.eta0, mv);
    if (t == 0.0) return {f.value(rho) / rho, g.value(rho) / rho};

    const double Y = std::max(f.support(), g.support());
    const double lo = std::max(rho - t, -Y);
    const double hi = std::min(rho + t, Y);

    // I[k1 phi0], I[k2 phi0], I[J0 phi1], I[k1 phi1] over the cone interval.
    std::array<cplx, 4> I{};
    if (hi > lo) {
        auto integrand = [&](double y) {
            const double d = rho - y;
            const double w2 = (t - d) * (t + d);
            const BesselScaled b = bessel_scaled(mv * std::sqrt(std::max(w2, 0.0)));
            const double k1 = mv * b.j1_over_x;
            const cplx p0 = f.value(y);
            const cplx p1 = g.value(y);
            return std::array<cplx, 4>{k1 * p0, b.j2_over_x2 * p0, b.j0 * p1, k1 * p1};
        };
        I = integrate(integrand, lo, hi, quad, {0.0}).value;
    }

    // On the cone rho == t the inner limit y -> 0- is taken, matching the
    // theta(t - r) = 1 convention of the singular part.
    const double ym = (rho - t == 0.0) ? -0.0 : rho - t;
    const cplx f_plus = f.value(rho + t);
    const cplx f_minus = f.value(ym);
    const cplx g_plus = g.value(rho + t);
    const cplx g_minus = g.value(ym);
    const double m2 = mv * mv;

    const cplx v = 0.5 * (f_plus + f_minus) - 0.5 * mv * t * I[0] + 0.5 * I[2];
    const cplx vt = 0.5 * (g_plus + g_minus) - 0.5 * mv * t * I[3] +
                    0.5 * (f.derivative(rho + t) - f.derivative(ym)) -
                    0.25 * m2 * t * (f_plus + f_minus) - 0.5 * mv * I[0] +
                    0.5 * m2 * m2 * t * t * I[1];
    return {v / rho, vt / rho};
}

}  // namespace pointkg
