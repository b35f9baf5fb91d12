#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "pointkg/errors.hpp"
#include "pointkg/specfun.hpp"

using namespace pointkg;
using doctest::Approx;

TEST_CASE("bessel_j1 small arguments and series oracle") {
    CHECK(bessel_j1(0.0) == 0.0);
    CHECK(std::fabs(bessel_j1(1e-8) - 5e-9) <= 1e-24);
    CHECK(std::fabs(bessel_j1(1.0) - oracle::j1_series(1.0)) <= 1e-15);
    CHECK(std::fabs(bessel_j1(1.0) - 0.44005058574493355) <= 1e-15);
}

TEST_CASE("bessel functions agree with boost across the series/asymptotic switch") {
    for (double x = 0.05; x < 80.0; x += 0.37) {
        INFO("x = " << x);
        CHECK(std::fabs(bessel_j1(x) - boost::math::cyl_bessel_j(1, x)) <= 2e-14);
        CHECK(std::fabs(bessel_j0(x) - boost::math::cyl_bessel_j(0, x)) <= 2e-14);
    }
    CHECK(bessel_j1(-2.0) == Approx(-bessel_j1(2.0)).epsilon(1e-15));
}

TEST_CASE("bessel_scaled consistency") {
    for (double x : {0.0, 1e-3, 0.7, 5.0, 16.9, 17.1, 40.0}) {
        const auto b = bessel_scaled(x);
        if (x > 0) {
            CHECK(b.j1_over_x * x == Approx(bessel_j1(x)).epsilon(1e-13));
            CHECK(b.j2_over_x2 * x * x == Approx(boost::math::cyl_bessel_j(2, x)).epsilon(1e-11));
        } else {
            CHECK(b.j0 == 1.0);
            CHECK(b.j1_over_x == 0.5);
            CHECK(b.j2_over_x2 == Approx(0.125));
        }
    }
}

TEST_CASE("kernel_K") {
    const Mass m(1.0);
    CHECK(kernel_K(0.0, m) == Approx(0.5));
    CHECK(std::fabs(kernel_K(1.0, m) - oracle::j1_series(1.0)) <= 1e-15);
    CHECK(kernel_K(0.0, Mass(2.5)) == Approx(1.25));
    for (double t = 1.0; t <= 2000.0; t *= 1.1) CHECK(std::fabs(kernel_K(t, m)) <= std::pow(t, -1.5));
}

TEST_CASE("kernel_L") {
    const Mass m(1.0);
    CHECK(kernel_L(2.0, 1.0, m) == 0.0);
    for (double t : {0.1, 1.0, 7.3}) CHECK(kernel_L(0.0, t, m) == Approx(kernel_K(t, m)).epsilon(1e-14));
    CHECK(std::fabs(kernel_L(1.0, std::sqrt(2.0), m) - oracle::j1_series(1.0)) <= 1e-14);
    CHECK(kernel_L(1.0, 1.0, m) == Approx(0.5));
}

TEST_CASE("kernel_L_dt against centered differences") {
    const Mass m(1.3);
    const double h = 1e-5;
    for (double r : {0.0, 0.5, 2.0}) {
        for (double t : {r + 0.3, r + 2.0, r + 11.0}) {
            const double fd = (kernel_L(r, t + h, m) - kernel_L(r, t - h, m)) / (2 * h);
            CHECK(kernel_L_dt(r, t, m) == Approx(fd).epsilon(1e-7));
        }
    }
}

TEST_CASE("green_G") {
    const Mass m(1.0);
    CHECK(green_G(1.0, m) == Approx(1.0 / (4 * oracle::pi * std::exp(1.0))).epsilon(1e-15));
    double prev = green_G(0.1, m);
    for (double r = 0.2; r < 40.0; r += 0.1) {
        const double g = green_G(r, m);
        CHECK(g < prev);
        prev = g;
    }
    const double norm2 = boost::math::quadrature::exp_sinh<double>().integrate(
        [&](double r) { return r < 1e-200 ? 1.0 / (4 * oracle::pi) : std::pow(r * green_G(r, m), 2) * 4 * oracle::pi; });
    CHECK(norm2 == Approx(1.0 / (8 * oracle::pi)).epsilon(1e-12));
    CHECK_THROWS_AS((void)green_G(0.0, m), DomainError);
}

TEST_CASE("kappa branch") {
    const Mass m(1.0);
    CHECK(std::abs(kappa(0.0, m) - cplx(0, 1)) <= 1e-15);
    CHECK(std::abs(kappa(2.0, m) - std::sqrt(3.0)) <= 1e-15);
    CHECK(std::abs(kappa(-2.0, m) + std::sqrt(3.0)) <= 1e-15);
    CHECK(std::abs(kappa(1.0, m)) == 0.0);
    CHECK(std::abs(kappa(-1.0, m)) == 0.0);
    for (double w : {-5.0, -1.5, 1.01, 3.0}) CHECK((w * kappa(w, m)).real() > 0.0);
}

TEST_CASE("K_hat") {
    const Mass m(1.0);
    CHECK(std::abs(K_hat(0.0, m) - 1.0) <= 1e-15);
    CHECK(std::abs(K_hat(1.0, m) - cplx(0, 1)) <= 1e-15);
    CHECK(std::abs(K_hat(-1.0, m) - cplx(0, -1)) <= 1e-15);
    for (double w = -1.0; w <= 1.0; w += 0.01) CHECK(std::abs(K_hat(w, m)) == Approx(1.0).epsilon(1e-14));
}

TEST_CASE("L_hat") {
    const Mass m(1.0);
    CHECK(std::abs(L_hat(1.0, 0.0, m) - (1.0 - std::exp(-1.0))) <= 1e-14);
    for (double w : {-0.9, 0.0, 0.4}) CHECK(std::abs(L_hat(1e-9, w, m) - K_hat(w, m)) <= 1e-8);
    const double r = 0.7;
    CHECK(std::abs(L_hat(r, 1.0, m) - (std::exp(cplx(0, r)) - 1.0) / r) <= 1e-13);
    // Direct transform of kernel_L on t > r.
    const double w = 0.3;
    const double re = oracle::integrate([&](double t) { return kernel_L(r, t, m) * std::cos(w * t); }, r, 400.0);
    CHECK(std::fabs(re - L_hat(r, w, m).real()) <= 5e-3);
}

TEST_CASE("Mass validation") {
    CHECK_THROWS_AS(Mass(0.0), DomainError);
    CHECK_THROWS_AS(Mass(-1.0), DomainError);
    CHECK_THROWS_AS(Mass(std::nan("")), DomainError);
}
