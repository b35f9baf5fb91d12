#include "pointkg/specfun.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "pointkg/errors.hpp"

namespace pointkg {

namespace {

constexpr double kPi = std::numbers::pi;

// Joint power series. With u = (x/2)^2 and t_k = (-u)^k / (k!)^2:
//   J0      = sum t_k
//   J1/x    = 1/2 sum t_k / (k+1)
//   J2/x^2  = 1/4 sum t_k / ((k+1)(k+2))
// Summed in extended precision; the largest term at x = 17 is ~4e5.
BesselScaled series(double x) {
    const long double u = 0.25L * static_cast<long double>(x) * x;
    long double term = 1.0L;
    long double s0 = 0.0L;
    long double s1 = 0.0L;
    long double s2 = 0.0L;
    for (int k = 0; k < 200; ++k) {
        const long double kp1 = k + 1;
        s0 += term;
        s1 += term / kp1;
        s2 += term / (kp1 * (kp1 + 1.0L));
        term *= -u / (kp1 * kp1);
        if (std::fabs(term) < 1e-22L * (1.0L + std::fabs(s0))) break;
    }
    return {static_cast<double>(s0), static_cast<double>(0.5L * s1),
            static_cast<double>(0.25L * s2)};
}

// Hankel asymptotic P and Q for order nu (mu = 4 nu^2), truncated at the
// smallest term.
void hankel_pq(double x, double mu, double& p, double& q) {
    p = 1.0;
    q = 0.0;
    double a = 1.0;  // a_k / x^k
    double last = 1.0;
    for (int k = 1; k < 80; ++k) {
        const double odd = 2.0 * k - 1.0;
        a *= (mu - odd * odd) / (8.0 * k * x);
        const double mag = std::fabs(a);
        if (mag > last) break;
        last = mag;
        // k odd contributes to Q, k even to P, with alternating signs.
        switch (k % 4) {
            case 1: q += a; break;
            case 2: p -= a; break;
            case 3: q -= a; break;
            case 0: p += a; break;
        }
        if (mag < 1e-18) break;
    }
}

BesselScaled asymptotic(double x) {
    const double amp = std::sqrt(2.0 / (kPi * x));
    const double c = std::cos(x);
    const double s = std::sin(x);
    const double r2 = std::numbers::sqrt2 / 2.0;

    double p0, q0, p1, q1;
    hankel_pq(x, 0.0, p0, q0);
    hankel_pq(x, 4.0, p1, q1);

    // chi0 = x - pi/4, chi1 = x - 3pi/4, expanded to avoid subtracting from x.
    const double cos0 = r2 * (c + s);
    const double sin0 = r2 * (s - c);
    const double cos1 = r2 * (s - c);
    const double sin1 = -r2 * (s + c);

    const double j0 = amp * (p0 * cos0 - q0 * sin0);
    const double j1 = amp * (p1 * cos1 - q1 * sin1);
    const double j1x = j1 / x;
    return {j0, j1x, (2.0 * j1x - j0) / (x * x)};
}

}  // namespace

Mass::Mass(double m) : m_(m) {
    if (!(m > 0.0) || !std::isfinite(m)) {
        throw DomainError("mass must be positive and finite, got " + std::to_string(m));
    }
}

BesselScaled bessel_scaled(double x) {
    const double ax = std::fabs(x);
    return ax < kBesselSwitch ? series(ax) : asymptotic(ax);
}

double bessel_j0(double x) { return bessel_scaled(x).j0; }

double bessel_j1(double x) { return x * bessel_scaled(x).j1_over_x; }

double kernel_K(double t, Mass m) {
    if (t < 0.0) return 0.0;
    return m * bessel_scaled(m * t).j1_over_x;
}

double kernel_L(double r, double t, Mass m) {
    if (t < r) return 0.0;
    const double w2 = (t - r) * (t + r);
    return m * bessel_scaled(m * std::sqrt(w2)).j1_over_x;
}

double kernel_L_dt(double r, double t, Mass m) {
    if (t <= r) return 0.0;
    const double w2 = (t - r) * (t + r);
    const double mv = m.value();
    return -mv * mv * mv * t * bessel_scaled(mv * std::sqrt(w2)).j2_over_x2;
}

double green_G(double r, Mass m) {
    if (!(r > 0.0)) throw DomainError("green_G: pole at r = 0");
    return std::exp(-m * r) / (4.0 * kPi * r);
}

cplx kappa(double omega, Mass m) {
    const double d = omega * omega - m * m;
    if (d < 0.0) return {0.0, std::sqrt(-d)};
    if (d == 0.0) return {0.0, 0.0};
    return {std::copysign(std::sqrt(d), omega), 0.0};
}

cplx K_hat(double omega, Mass m) {
    if (std::fabs(omega) > m) {
        throw DomainError("K_hat is defined on the gap |omega| <= m only");
    }
    return cplx{std::sqrt(m * m - omega * omega), omega} / m.value();
}

cplx L_hat(double r, double omega, Mass m) {
    if (!(r > 0.0)) throw DomainError("L_hat: r must be positive");
    if (std::fabs(omega) > m) {
        throw DomainError("L_hat is defined on the gap |omega| <= m only");
    }
    const double g = std::sqrt(m * m - omega * omega);
    // (e^{i w r} - 1) - (e^{-g r} - 1), both differences formed without cancellation.
    const double half = 0.5 * omega * r;
    const double sh = std::sin(half);
    const cplx osc_m1{-2.0 * sh * sh, std::sin(omega * r)};
    const double dec_m1 = std::expm1(-g * r);
    return (osc_m1 - dec_m1) / (m * r);
}

}  // namespace pointkg
