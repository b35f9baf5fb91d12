#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <queue>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace pointkg {

struct QuadratureConfig {
    double abs_tol = 1e-13;
    double rel_tol = 1e-12;  // relative to the L1 norm of the integrand
    int max_intervals = 4000;
    // Initial panel width; oscillatory kernels need a few panels per period.
    double initial_panel = 2.0;
};

namespace quad_detail {

inline double magnitude(double v) { return std::fabs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }
template <std::size_t N, class T>
double magnitude(const std::array<T, N>& v) {
    double m = 0.0;
    for (const auto& x : v) m = std::max(m, magnitude(x));
    return m;
}

template <class V>
V zero_like() {
    return V{};
}

inline double scale(double v, double s) { return v * s; }
inline std::complex<double> scale(const std::complex<double>& v, double s) { return v * s; }
template <std::size_t N, class T>
std::array<T, N> scale(std::array<T, N> v, double s) {
    for (auto& x : v) x = scale(x, s);
    return v;
}

inline double add(double a, double b) { return a + b; }
inline std::complex<double> add(const std::complex<double>& a, const std::complex<double>& b) {
    return a + b;
}
template <std::size_t N, class T>
std::array<T, N> add(std::array<T, N> a, const std::array<T, N>& b) {
    for (std::size_t i = 0; i < N; ++i) a[i] = add(a[i], b[i]);
    return a;
}

template <class V>
struct Panel {
    double a, b;
    V value;
    double error;
    double l1;
    bool operator<(const Panel& o) const { return error < o.error; }
};

// One 10/21-point Gauss-Kronrod panel on [a, b].
template <class F>
auto gk21(F& f, double a, double b) -> Panel<decltype(f(a))> {
    using V = decltype(f(a));
    using GK = boost::math::quadrature::gauss_kronrod<double, 21>;
    using G = boost::math::quadrature::gauss<double, 10>;
    const auto& x = GK::abscissa();
    const auto& wk = GK::weights();
    const auto& wg = G::weights();
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    V fc = f(mid);
    V kron = scale(fc, wk[0]);
    V gauss = zero_like<V>();
    double l1 = magnitude(fc) * wk[0];
    for (std::size_t i = 1; i < x.size(); ++i) {
        V fp = f(mid + half * x[i]);
        V fm = f(mid - half * x[i]);
        V sum = add(fp, fm);
        kron = add(kron, scale(sum, wk[i]));
        l1 += (magnitude(fp) + magnitude(fm)) * wk[i];
        if (i % 2 == 1) gauss = add(gauss, scale(sum, wg[i / 2]));
    }
    V diff = add(kron, scale(gauss, -1.0));
    return {a, b, scale(kron, half), magnitude(diff) * half, l1 * half};
}

}  // namespace quad_detail

template <class V>
struct QuadResult {
    V value;
    double error = 0.0;
    int intervals = 0;
};

/// Globally adaptive Gauss-Kronrod integration of f over [a, b], optionally
/// pre-split at the given breakpoints (kinks, cone edges). V may be double,
/// complex<double> or a std::array of those.
template <class F>
auto integrate(F&& f, double a, double b, const QuadratureConfig& cfg,
               const std::vector<double>& breaks = {}) -> QuadResult<decltype(f(a))> {
    using V = decltype(f(a));
    using quad_detail::Panel;
    QuadResult<V> out{quad_detail::zero_like<V>(), 0.0, 0};
    if (!(b > a)) return out;

    std::vector<double> cuts{a};
    for (double c : breaks) {
        if (c > a && c < b) cuts.push_back(c);
    }
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());

    std::priority_queue<Panel<V>> heap;
    double total_err = 0.0;
    double total_l1 = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const double lo = cuts[k];
        const double hi = cuts[k + 1];
        if (!(hi > lo)) continue;
        const int n = std::max(1, static_cast<int>(std::ceil((hi - lo) / cfg.initial_panel)));
        const double h = (hi - lo) / n;
        for (int j = 0; j < n; ++j) {
            const double pa = lo + j * h;
            const double pb = (j + 1 == n) ? hi : lo + (j + 1) * h;
            auto p = quad_detail::gk21(f, pa, pb);
            total_err += p.error;
            total_l1 += p.l1;
            heap.push(std::move(p));
        }
    }

    int count = static_cast<int>(heap.size());
    while (!heap.empty() && count < cfg.max_intervals &&
           total_err > std::max(cfg.abs_tol, cfg.rel_tol * total_l1)) {
        Panel<V> worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            heap.push(std::move(worst));
            break;
        }
        auto left = quad_detail::gk21(f, worst.a, mid);
        auto right = quad_detail::gk21(f, mid, worst.b);
        total_err += left.error + right.error - worst.error;
        total_l1 += left.l1 + right.l1 - worst.l1;
        heap.push(std::move(left));
        heap.push(std::move(right));
        ++count;
    }

    // Sum in interval order so results do not depend on heap layout.
    std::vector<Panel<V>> panels;
    panels.reserve(heap.size());
    while (!heap.empty()) {
        panels.push_back(heap.top());
        heap.pop();
    }
    std::sort(panels.begin(), panels.end(),
              [](const Panel<V>& l, const Panel<V>& r) { return l.a < r.a; });
    for (const auto& p : panels) {
        out.value = quad_detail::add(out.value, p.value);
        out.error += p.error;
    }
    out.intervals = static_cast<int>(panels.size());
    return out;
}

/// Nodes and weights of the n-point Gauss-Legendre rule mapped to [a, b]
/// (n = 10 fixed; used for composite panel rules on sampled histories).
struct GaussLegendre10 {
    std::array<double, 10> x;
    std::array<double, 10> w;
};

inline GaussLegendre10 gauss_legendre10(double a, double b) {
    using G = boost::math::quadrature::gauss<double, 10>;
    const auto& ax = G::abscissa();
    const auto& aw = G::weights();
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    GaussLegendre10 r{};
    for (std::size_t i = 0; i < 5; ++i) {
        r.x[2 * i] = mid - half * ax[i];
        r.x[2 * i + 1] = mid + half * ax[i];
        r.w[2 * i] = half * aw[i];
        r.w[2 * i + 1] = half * aw[i];
    }
    return r;
}

}  // namespace pointkg
