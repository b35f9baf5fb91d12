#include <cmath>
#include <random>

#include "doctest.h"
#include "pointkg/errors.hpp"
#include "pointkg/nonlinearity.hpp"

using namespace pointkg;
using doctest::Approx;

TEST_CASE("potential_U") {
    const auto p = PolynomialPotential::cubic_quintic();
    CHECK(potential_U(PolynomialPotential({0.3, -1.0, 1.0}), 0.0) == 0.3);
    CHECK(potential_U(p, 1.0) == 0.0);
    const cplx z{0.4, -0.9};
    for (double th : {0.1, 1.7, 3.9}) {
        CHECK(potential_U(p, std::polar(1.0, th) * z) == Approx(potential_U(p, z)).epsilon(1e-15));
    }
}

TEST_CASE("radial_b") {
    const auto p = PolynomialPotential::cubic_quintic();
    CHECK(radial_b(p, 0.0) == -1.0);
    CHECK(radial_b(p, 1.0) == 1.0);
    const PolynomialPotential p4({0.0, 0.5, -2.0, 0.1, 0.25});
    const auto b = p4.b_coefficients();
    REQUIRE(b.size() == 4);
    CHECK(b.back() == Approx(4 * 0.25));
    CHECK(b.back() > 0.0);
    const double h = 1e-6;
    for (double s : {0.0, 0.3, 2.0}) {
        const double fd = (radial_b(p4, s + h) - radial_b(p4, s - h)) / (2 * h);
        CHECK(radial_b_prime(p4, s) == Approx(fd).epsilon(1e-7));
    }
}

TEST_CASE("force_F") {
    const auto p = PolynomialPotential::cubic_quintic();
    CHECK(force_F(p, 0.0) == cplx(0.0));
    CHECK(std::abs(force_F(p, 1.0) - 1.0) <= 1e-15);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 50; ++i) {
        const cplx z{u(rng), u(rng)};
        const double th = 3.0 * u(rng);
        const cplx lhs = force_F(p, std::polar(1.0, th) * z);
        const cplx rhs = std::polar(1.0, th) * force_F(p, z);
        CHECK(std::abs(lhs - rhs) <= 1e-13 * (1.0 + std::abs(rhs)));
    }
}

TEST_CASE("force_F is half the real gradient of U") {
    const PolynomialPotential p({0.1, -1.0, 0.3, 0.5});
    const double h = 1e-6;
    for (const cplx z : {cplx(0.3, 0.2), cplx(-1.1, 0.4), cplx(0.0, -0.8)}) {
        const double dx = (potential_U(p, z + h) - potential_U(p, z - h)) / (2 * h);
        const double dy = (potential_U(p, z + cplx(0, h)) - potential_U(p, z - cplx(0, h))) / (2 * h);
        const cplx F = force_F(p, z);
        CHECK(F.real() == Approx(0.5 * dx).epsilon(1e-7));
        CHECK(F.imag() == Approx(0.5 * dy).epsilon(1e-7));
    }
}

TEST_CASE("PolynomialPotential validation") {
    try {
        PolynomialPotential({0.0, -1.0});
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("N>=2") != std::string::npos);
    }
    CHECK_THROWS_AS(PolynomialPotential({0.0, 1.0, -1.0}), ConfigError);
    CHECK_THROWS_AS(PolynomialPotential({0.0, 1.0, std::nan("")}), ConfigError);
}
