#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "pointkg/convolution.hpp"
#include "pointkg/volterra.hpp"

using namespace pointkg;
using doctest::Approx;

TEST_CASE("trapezoid weights integrate the kernel") {
    const Mass m(1.0);
    const double h = 0.1;
    const auto w = trapezoid_weights(h, 400, m);
    REQUIRE(w.a.size() == 400);
    REQUIRE(w.c.size() >= 400);
    CHECK(w.c[0] == 0.0);
    double sum = 0.0;
    for (std::size_t k = 0; k < 400; ++k) sum += w.a[k] + w.b[k];
    const double ref = oracle::integrate([](double s) { return s == 0.0 ? 0.5 : oracle::j1_series(s) / s; }, 0.0, 10.0) +
                       oracle::integrate([](double s) { return boost::math::cyl_bessel_j(1, s) / s; }, 10.0, 40.0);
    CHECK(sum == Approx(ref).epsilon(1e-12));
    // Linear history is integrated exactly: int_0^t K(s) (t - s) ds.
    std::vector<cplx> z;
    for (int k = 0; k <= 50; ++k) z.push_back(k * h);
    const double t = 50 * h;
    const double exact = oracle::integrate([&](double s) { return (s == 0.0 ? 0.5 : oracle::j1_series(s) / s) * (t - s); }, 0.0, t);
    CHECK(std::abs(trapezoid_convolution(w, z, 50) - exact) <= 1e-13);
}

TEST_CASE("history convolution: naive and blocked FFT modes agree") {
    const Mass m(1.0);
    const std::size_t n = 3000;
    const auto w = trapezoid_weights(0.05, n, m);
    HistoryConvolution naive(w.c, ConvMode::naive, n);
    HistoryConvolution fast(w.c, ConvMode::blocked_fft, n);
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g;
    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const cplx hn = naive.history(k);
        const cplx hf = fast.history(k);
        worst = std::max(worst, std::abs(hn - hf));
        const cplx z{g(rng), g(rng)};
        naive.push(z);
        fast.push(z);
    }
    CHECK(worst <= 1e-10);
    CHECK(naive.size() == n);
    CHECK_THROWS((void)naive.push(1.0));
}

TEST_CASE("history convolution matches the direct sum") {
    const Mass m(2.0);
    const std::size_t n = 700;
    const auto w = trapezoid_weights(0.02, n, m);
    HistoryConvolution fast(w.c, ConvMode::blocked_fft, n);
    std::vector<cplx> z;
    for (std::size_t k = 0; k < n; ++k) {
        z.push_back(std::polar(1.0 + 0.1 * std::sin(0.01 * k), -0.3 * k * 0.02));
        fast.push(z.back());
    }
    for (std::size_t k : {1ul, 63ul, 64ul, 65ul, 200ul, 699ul}) {
        const cplx direct = trapezoid_convolution(w, z, k);
        const cplx recon = w.a[0] * z[k] + fast.history(k) - w.a[k] * z[0];
        CHECK(std::abs(direct - recon) <= 1e-12);
    }
}

TEST_CASE("convolution_tail examples") {
    const Mass m(1.0);
    Trajectory zero;
    zero.dt = 0.1;
    zero.zeta.assign(101, 0.0);
    CHECK(convolution_tail(zero, 10.0, m) == cplx(0.0));

    Trajectory one;
    one.dt = 0.05;
    one.zeta.assign(10001, 1.0);
    CHECK(std::abs(convolution_tail(one, 500.0, m) - 1.0) <= 2e-2);

    const double omega = 0.6;
    Trajectory osc;
    osc.dt = 0.05;
    for (int k = 0; k <= 4000; ++k) osc.zeta.push_back(std::polar(1.0, -omega * k * 0.05));
    const cplx expect = std::polar(1.0, -omega * 200.0) * K_hat(omega, m);
    CHECK(std::abs(convolution_tail(osc, 200.0, m) - expect) <= 5e-2);
}
