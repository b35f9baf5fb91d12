#include "pointkg/radial.hpp"

#include <array>
#include <string>

#include "pointkg/errors.hpp"

namespace pointkg {

namespace {

// Integral over [lo, hi] of (x - u)(x - v), evaluated in y = x - u.
double prod_integral(double u, double v, double lo, double hi) {
    const double d = u - v;
    auto prim = [d](double y) { return y * y * y / 3.0 + d * y * y / 2.0; };
    return prim(hi - u) - prim(lo - u);
}

// Weights of the quadratic interpolant through nodes x integrated over [lo, hi].
std::array<double, 3> quadratic_weights(const std::array<double, 3>& x, double lo, double hi) {
    std::array<double, 3> w{};
    for (int i = 0; i < 3; ++i) {
        const double u = x[(i + 1) % 3];
        const double v = x[(i + 2) % 3];
        w[i] = prod_integral(u, v, lo, hi) / ((x[i] - u) * (x[i] - v));
    }
    return w;
}

}  // namespace

std::vector<double> radial_weights(std::span<const double> r, double R) {
    if (r.empty() || !(r.front() > 0.0)) throw InputError("radial grid must start at r > 0");
    if (!(R > 0.0)) throw InputError("integration radius must be positive");
    const double slack = 1e-9 * R;
    if (R > r.back() + slack) {
        throw InputError("integration radius " + std::to_string(R) + " exceeds grid outer radius " +
                         std::to_string(r.back()));
    }

    // Nodes: origin plus grid points inside [0, R].
    std::vector<double> x{0.0};
    for (double ri : r) {
        if (ri <= R + slack) x.push_back(ri);
    }
    std::vector<double> w(r.size() + 1, 0.0);
    const std::size_t n = x.size() - 1;  // full cells

    if (n == 1) {
        w[0] += 0.5 * x[1];
        w[1] += 0.5 * x[1];
    }
    std::size_t j = 0;
    for (; n >= 2 && j + 2 <= n; j += 2) {
        const auto q = quadratic_weights({x[j], x[j + 1], x[j + 2]}, x[j], x[j + 2]);
        for (int i = 0; i < 3; ++i) w[j + i] += q[i];
    }
    if (n >= 2 && j < n) {
        const auto q = quadratic_weights({x[n - 2], x[n - 1], x[n]}, x[n - 1], x[n]);
        for (int i = 0; i < 3; ++i) w[n - 2 + i] += q[i];
    }

    // Partial cell [x_n, R].
    if (n == 0) {
        w[0] += R - R * R / (2.0 * r[0]);
        w[1] += R * R / (2.0 * r[0]);
    } else if (R > x[n] + slack) {
        const double next = r[n];  // first grid point beyond R
        const auto q = quadratic_weights({x[n - 1], x[n], next}, x[n], R);
        w[n - 1] += q[0];
        w[n] += q[1];
        w[n + 1] += q[2];
    }
    return w;
}

}  // namespace pointkg
