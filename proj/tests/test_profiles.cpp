#include <cmath>
#include <numbers>

#include "doctest.h"
#include "pointkg/errors.hpp"
#include "pointkg/profiles.hpp"

using namespace pointkg;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

double fd(const RadialShape& s, double r, double h = 1e-6) {
    return (shape_value(s, r + h) - shape_value(s, r - h)) / (2 * h);
}

}  // namespace

TEST_CASE("shape derivatives match centered differences") {
    const RadialShape shapes[] = {GaussianShape{3.0, 0.5}, YukawaDifferenceShape{0.6, 1.0},
                                  YukawaDifferenceShape{2.0, 0.5}, BumpShape{2.0, 1.5}};
    for (const auto& s : shapes) {
        for (double r : {0.05, 0.3, 1.1, 2.5, 3.2}) {
            INFO(shape_name(s) << " at r = " << r);
            CHECK(shape_derivative(s, r) == Approx(fd(s, r)).epsilon(1e-6).scale(1e-8));
        }
    }
}

TEST_CASE("yukawa difference near the origin") {
    const YukawaDifferenceShape y{0.6, 1.0};
    CHECK(shape_value(y, 0.0) == Approx((1.0 - 0.6) / (4 * kPi)).epsilon(1e-15));
    for (double r : {1e-8, 1e-4, 0.01, 0.49, 0.51, 2.0}) {
        const double direct = (std::exp(-0.6 * r) - std::exp(-r)) / (4 * kPi * r);
        CHECK(shape_value(y, r) == Approx(direct).epsilon(r < 1e-3 ? 1e-8 : 1e-13));
    }
    CHECK(shape_derivative(y, 0.0) == Approx(-(1.0 - 0.36) / (8 * kPi)).epsilon(1e-12));
}

TEST_CASE("bump is compactly supported") {
    const BumpShape b{2.0, 1.0};
    CHECK(shape_value(b, 2.0) == Approx(1.0));
    CHECK(shape_value(b, 1.0) == 0.0);
    CHECK(shape_value(b, 3.0) == 0.0);
    CHECK(shape_support(b) == 3.0);
}

TEST_CASE("table shape interpolates smooth data") {
    const double h = 0.05;
    std::vector<double> v;
    for (int i = 0; i <= 200; ++i) v.push_back(std::exp(-std::pow(i * h - 4.0, 2)) - std::exp(-36.0));
    const TableShape t(v, h);
    CHECK(t.extent() == Approx(10.0));
    for (double r : {0.0, 2.33, 4.0, 5.51}) {
        CHECK(t.value(r) == Approx(std::exp(-std::pow(r - 4.0, 2))).epsilon(1e-5).scale(1e-6));
        CHECK(t.derivative(r) == Approx(-2 * (r - 4.0) * std::exp(-std::pow(r - 4.0, 2))).scale(1e-3).epsilon(1e-3));
    }
    CHECK(t.value(12.0) == 0.0);
    CHECK_THROWS_AS(TableShape({1.0, 1.0, 1.0, 1.0, 1.0}, 0.1), InputError);
    CHECK_THROWS_AS(TableShape({1.0, 0.0}, 0.1), InputError);
    CHECK_THROWS_AS(TableShape({1.0, 0.5, 0.2, 0.0}, -0.1), InputError);
}

TEST_CASE("shape validation") {
    CHECK_THROWS_AS((void)shape_support(GaussianShape{0.0, 0.0}), InputError);
    CHECK_THROWS_AS((void)shape_support(YukawaDifferenceShape{-1.0, 1.0}), InputError);
    CHECK_THROWS_AS((void)shape_support(BumpShape{0.0, -1.0}), InputError);
}

TEST_CASE("soliton_state satisfies the domain condition and scales linearly") {
    const Mass m(1.0);
    const auto p = PolynomialPotential::cubic_quintic();
    const double omega = 0.5;
    const double kap = std::sqrt(0.75);
    const double q = std::sqrt((1.0 + (1.0 - kap) / (4 * kPi)) / 2.0);
    const RadialState s = soliton_state(omega, q, 0.3, m);
    CHECK(std::abs(s.domain_defect(p)) <= 1e-14);
    CHECK_NOTHROW(s.check_domain(p));
    for (double r : {0.2, 1.0, 4.0}) {
        const cplx full = s.psi_reg.value(r) + s.zeta0 * std::exp(-m * r) / (4 * kPi * r);
        const cplx expected = std::polar(q, 0.3) * std::exp(-kap * r) / (4 * kPi * r);
        CHECK(std::abs(full - expected) <= 1e-14);
        const cplx vel = s.pi_reg.value(r) + s.eta0 * std::exp(-m * r) / (4 * kPi * r);
        CHECK(std::abs(vel + cplx(0, omega) * expected) <= 1e-14);
    }
    const auto s2 = s.scaled(2.0);
    CHECK(std::abs(s2.psi_reg.value(0.5) - 2.0 * s.psi_reg.value(0.5)) <= 1e-15);
    CHECK(std::abs(s2.zeta0 - 2.0 * s.zeta0) == 0.0);
    CHECK_THROWS_AS(s2.check_domain(p), InputError);
    CHECK_THROWS_AS((void)soliton_state(1.0, q, 0.0, m), DomainError);
}
