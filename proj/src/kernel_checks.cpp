#include "pointkg/kernel_checks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "pointkg/quadrature.hpp"

namespace pointkg {

namespace {

constexpr double kPi = std::numbers::pi;

// int_T^inf t^{-a} e^{i nu t} dt by repeated integration by parts, summed
// while the terms decrease.
cplx power_tail(double a, double nu, double T) {
    const cplx inu{0.0, nu};
    cplx term = -std::pow(T, -a) / inu;
    cplx acc = term;
    double last = std::abs(term);
    for (int k = 1; k < 60; ++k) {
        term *= (a + k - 1) / (T * inu);
        const double mag = std::abs(term);
        if (mag > last) break;
        acc += term;
        last = mag;
        if (mag < 1e-20) break;
    }
    return acc * std::polar(1.0, nu * T);
}

}  // namespace

cplx kernel_transform(double omega, Mass m, double T) {
    const double mv = m.value();
    QuadratureConfig cfg;
    cfg.abs_tol = 1e-12;
    cfg.rel_tol = 1e-13;
    cfg.initial_panel = std::min(1.0, 2.0 / mv);
    cfg.max_intervals = 200000;
    auto f = [&](double t) { return kernel_K(t, m) * std::polar(1.0, omega * t); };
    const cplx head = integrate(f, 0.0, T, cfg).value;

    // K(t) ~ sqrt(2/(pi m)) [ t^{-3/2} P cos chi - t^{-5/2} Q sin chi ] with
    // chi = m t - 3 pi/4, P = 1 + 15/(128 (m t)^2), Q = 3/(8 m).
    const double amp = std::sqrt(2.0 / (kPi * mv));
    struct Term {
        double cos_coef, sin_coef, power;
    };
    const Term terms[] = {{1.0, 0.0, 1.5}, {0.0, -3.0 / (8.0 * mv), 2.5}, {15.0 / (128.0 * mv * mv), 0.0, 3.5}};
    cplx tail{};
    const cplx phase_p = std::polar(1.0, -0.75 * kPi);  // e^{i chi} = phase_p e^{i m t}
    for (const auto& term : terms) {
        const cplx up = power_tail(term.power, omega + mv, T) * phase_p;
        const cplx down = power_tail(term.power, omega - mv, T) * std::conj(phase_p);
        // cos chi = (e^{i chi} + e^{-i chi})/2, sin chi = (e^{i chi} - e^{-i chi})/(2i)
        tail += term.cos_coef * 0.5 * (up + down) + term.sin_coef * (up - down) / cplx{0.0, 2.0};
    }
    return head + amp * tail;
}

double bessel_j1_reference(double x) {
    using boost::multiprecision::cpp_bin_float_50;
    const cpp_bin_float_50 half = cpp_bin_float_50(x) / 2;
    const cpp_bin_float_50 u = half * half;
    cpp_bin_float_50 term = half;
    cpp_bin_float_50 sum = term;
    for (int k = 1; k < 400; ++k) {
        term *= -u / (cpp_bin_float_50(k) * (k + 1));
        sum += term;
        if (abs(term) < cpp_bin_float_50("1e-45")) break;
    }
    return static_cast<double>(sum);
}

std::vector<CheckResult> run_kernel_checks(Mass m, const KernelCheckTolerances& tol) {
    const double mv = m.value();
    std::vector<CheckResult> out;
    const int nf = std::max(2, tol.frequencies);
    std::vector<double> omegas(nf);
    for (int i = 0; i < nf; ++i) omegas[i] = mv * (-0.99 + 1.98 * i / (nf - 1.0));

    {
        std::vector<double> err(nf);
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < nf; ++i) {
            err[i] = std::abs(kernel_transform(omegas[i], m, tol.horizon) - K_hat(omegas[i], m));
        }
        const double worst = *std::max_element(err.begin(), err.end());
        out.push_back({"K_hat transform", worst, tol.transform, worst <= tol.transform});
    }
    {
        double worst = 0.0;
        const double r = 1e-10 / mv;
        for (double w : omegas) worst = std::max(worst, std::abs(L_hat(r, w, m) - K_hat(w, m)));
        worst = std::max(worst, std::abs(L_hat(r, mv, m) - K_hat(mv, m)));
        worst = std::max(worst, std::abs(L_hat(r, -mv, m) - K_hat(-mv, m)));
        out.push_back({"L_hat r->0 limit", worst, tol.limit, worst <= tol.limit});
    }
    {
        double worst = 0.0;
        for (int i = 1; i <= 400; ++i) {
            const double x = 0.05 * i;
            worst = std::max(worst, std::fabs(bessel_j1(x) - bessel_j1_reference(x)));
        }
        out.push_back({"J1 series", worst, tol.bessel, worst <= tol.bessel});
    }
    {
        double worst = 0.0;
        const double h = 1e-5;
        for (int i = 1; i <= 200; ++i) {
            const double x = 0.1 * i;
            const double fd = ((x + h) * bessel_j1(x + h) - (x - h) * bessel_j1(x - h)) / (2.0 * h);
            worst = std::max(worst, std::fabs(fd - x * bessel_j0(x)));
        }
        out.push_back({"d/dx (x J1) = x J0", worst, tol.derivative, worst <= tol.derivative});
    }
    {
        double worst = 0.0;
        for (double t = 10.0; t <= 1000.0; t += 0.01) {
            worst = std::max(worst, std::fabs(kernel_K(t, m)) * std::pow(1.0 + t, 1.5));
        }
        out.push_back({"K decay envelope", worst, tol.envelope, worst <= tol.envelope});
    }
    {
        double worst = 0.0;
        for (double r : {0.0, 0.5, 3.0, 10.0}) {
            worst = std::max(worst, std::fabs(kernel_L(r, r + 1e-13 * (1.0 + r), m) - 0.5 * mv));
            worst = std::max(worst, std::fabs(kernel_L(r, r, m) - 0.5 * mv));
        }
        out.push_back({"L light-cone continuity", worst, tol.cone, worst <= tol.cone});
    }
    return out;
}

}  // namespace pointkg
