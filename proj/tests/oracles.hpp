#pragma once

// Reference values computed independently of the library code paths.

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <complex>
#include <numbers>

namespace oracle {

inline constexpr double pi = std::numbers::pi;

// J1 by its power series in long double.
inline double j1_series(double x) {
    long double term = x / 2.0L, sum = term;
    const long double q = -static_cast<long double>(x) * x / 4.0L;
    for (int k = 1; k < 200; ++k) {
        term *= q / (static_cast<long double>(k) * (k + 1));
        sum += term;
        if (std::fabs(term) < 1e-22L * std::fabs(sum)) break;
    }
    return static_cast<double>(sum);
}

template <class F>
double integrate(F f, double a, double b) {
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 20, 1e-14);
}

// psi(0, t) of the free Klein-Gordon evolution of psi0 = exp(-r^2), pi0 = 0,
// by the three-dimensional Fourier representation.
inline double gaussian_origin_value(double t, double m) {
    auto f = [&](double k) {
        return k * k * std::pow(pi, 1.5) * std::exp(-k * k / 4.0) * std::cos(std::sqrt(k * k + m * m) * t);
    };
    return integrate(f, 0.0, 14.0) / (2.0 * pi * pi);
}

}  // namespace oracle
