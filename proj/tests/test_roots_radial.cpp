#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "pointkg/errors.hpp"
#include "pointkg/radial.hpp"
#include "pointkg/roots.hpp"

using namespace pointkg;
using doctest::Approx;

namespace {

std::vector<double> expand(const std::vector<double>& roots, double lead) {
    std::vector<double> c{lead};
    for (double r : roots) {
        std::vector<double> n(c.size() + 1, 0.0);
        for (std::size_t i = 0; i < c.size(); ++i) {
            n[i + 1] += c[i];
            n[i] -= r * c[i];
        }
        c = n;
    }
    return c;
}

}  // namespace

TEST_CASE("nonnegative_real_roots of products of linear factors") {
    auto r = nonnegative_real_roots(expand({1.0, 2.0, -3.0}, 2.0));
    REQUIRE(r.size() == 2);
    CHECK(r[0] == Approx(1.0).epsilon(1e-14));
    CHECK(r[1] == Approx(2.0).epsilon(1e-14));

    r = nonnegative_real_roots(expand({0.0, 0.5}, 1.0));
    REQUIRE(r.size() == 2);
    CHECK(r[0] == 0.0);
    CHECK(r[1] == Approx(0.5));

    CHECK(nonnegative_real_roots({1.0, 0.0, 1.0}).empty());
    CHECK(nonnegative_real_roots(expand({-1.0, -2.0}, 1.0)).empty());
}

TEST_CASE("nonnegative_real_roots with close and repeated roots") {
    auto r = nonnegative_real_roots(expand({0.3, 0.3 + 1e-6, 4.0}, 1.0));
    REQUIRE(r.size() == 3);
    CHECK(r[0] == Approx(0.3).epsilon(1e-9));
    CHECK(r[1] == Approx(0.3 + 1e-6).epsilon(1e-9));
    r = nonnegative_real_roots(expand({1.5, 1.5}, 1.0));
    REQUIRE(r.size() == 1);
    CHECK(r[0] == Approx(1.5).epsilon(1e-7));
}

TEST_CASE("sturm_count") {
    const auto c = expand({-1.0, 0.5, 2.0, 7.0}, 3.0);
    CHECK(sturm_count(c, -10.0, 10.0) == 4);
    CHECK(sturm_count(c, 0.0, 10.0) == 3);
    CHECK(sturm_count(c, 0.6, 6.9) == 1);
    CHECK(sturm_count(c, 0.5, 2.0) == 1);
}

TEST_CASE("random polynomials: every root is a root and none is missed") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 3.0);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<double> roots;
        for (int i = 0; i < 4; ++i) roots.push_back(u(rng));
        const auto c = expand(roots, 1.0);
        const auto found = nonnegative_real_roots(c);
        int expected = 0;
        for (double r : roots) expected += r >= 0.0 ? 1 : 0;
        CHECK(static_cast<int>(found.size()) == expected);
        for (double s : found) {
            double best = 1e300;
            for (double r : roots) best = std::min(best, std::fabs(r - s));
            CHECK(best <= 1e-9);
        }
    }
}

TEST_CASE("radial_weights integrate polynomials exactly") {
    std::vector<double> r;
    double x = 0.0;
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.05, 0.15);
    while (x < 5.0) {
        x += u(rng);
        r.push_back(x);
    }
    for (double R : {1.0, 2.37, r[20], 4.5}) {
        const auto w = radial_weights(r, R);
        REQUIRE(w.size() == r.size() + 1);
        for (int deg : {0, 1, 2}) {
            double acc = w[0] * (deg == 0 ? 1.0 : 0.0);
            for (std::size_t i = 0; i < r.size(); ++i) acc += w[i + 1] * std::pow(r[i], deg);
            INFO("R = " << R << ", degree " << deg);
            CHECK(acc == Approx(std::pow(R, deg + 1) / (deg + 1)).epsilon(1e-12));
        }
        double smooth = w[0];
        for (std::size_t i = 0; i < r.size(); ++i) smooth += w[i + 1] * std::exp(-r[i]);
        CHECK(smooth == Approx(1.0 - std::exp(-R)).epsilon(2e-4));
    }
    CHECK_THROWS_AS((void)radial_weights(r, 100.0), InputError);
}
