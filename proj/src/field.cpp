#include "pointkg/field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pointkg/errors.hpp"
#include "pointkg/quadrature.hpp"
#include "pointkg/radial.hpp"

namespace pointkg {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPanel = 0.25;

void check_time(const Trajectory& traj, double t) {
    if (traj.size() == 0) throw InputError("empty trajectory");
    if (traj.t0 != 0.0) throw InputError("trajectories must start at t = 0");
    if (!(t >= 0.0) || t > traj.t_end() + 1e-9 * std::max(1.0, traj.t_end())) {
        throw InputError("time " + std::to_string(t) + " outside the trajectory");
    }
}

// m L(r, r + u) for u >= 0, with the cone distance u kept exact.
double cone_kernel(double r, double u, double m) {
    const double w = std::sqrt(u * (u + 2.0 * r));
    return m * bessel_scaled(m * w).j1_over_x;
}

// int_0^tau L(r, r + tau - s) g(s) ds on grid-aligned Gauss-Legendre panels.
template <class G>
cplx retarded_integral(const Trajectory& traj, double r, double tau, double m, G&& g) {
    const int per_panel = std::max(1, static_cast<int>(std::lround(kPanel / traj.dt)));
    const double P = per_panel * traj.dt;
    cplx acc{};
    for (double lo = 0.0; lo < tau; lo += P) {
        const double hi = std::min(lo + P, tau);
        if (!(hi > lo)) break;
        const auto gl = gauss_legendre10(lo, hi);
        for (int i = 0; i < 10; ++i) {
            acc += gl.w[i] * cone_kernel(r, tau - gl.x[i], m) * g(gl.x[i]);
        }
        if (hi == tau) break;
    }
    return acc;
}

}  // namespace

cplx interpolate_zeta(const Trajectory& traj, double t) {
    check_time(traj, t);
    const std::size_t N = traj.size();
    if (N == 1) return traj.zeta[0];
    const double x = (t - traj.t0) / traj.dt;
    const std::size_t k = std::min(static_cast<std::size_t>(std::max(0.0, std::floor(x))), N - 2);
    const double s = std::clamp(x - static_cast<double>(k), 0.0, 1.0);
    const double s2 = s * s, s3 = s2 * s;
    const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
    const double h10 = s3 - 2.0 * s2 + s;
    const double h01 = -2.0 * s3 + 3.0 * s2;
    const double h11 = s3 - s2;
    return h00 * traj.zeta[k] + h10 * traj.dt * traj.zeta_dot[k] + h01 * traj.zeta[k + 1] +
           h11 * traj.dt * traj.zeta_dot[k + 1];
}

cplx interpolate_zeta_dot(const Trajectory& traj, double t) {
    check_time(traj, t);
    const std::size_t N = traj.size();
    if (N == 1) return traj.zeta_dot[0];
    const double x = (t - traj.t0) / traj.dt;
    const std::size_t npts = std::min<std::size_t>(4, N);
    const long long k = static_cast<long long>(std::floor(x));
    const long long first = std::clamp<long long>(k - static_cast<long long>(npts / 2) + 1, 0,
                                                  static_cast<long long>(N - npts));
    cplx acc{};
    for (std::size_t i = 0; i < npts; ++i) {
        double li = 1.0;
        const double xi = static_cast<double>(first + static_cast<long long>(i));
        for (std::size_t j = 0; j < npts; ++j) {
            if (j == i) continue;
            const double xj = static_cast<double>(first + static_cast<long long>(j));
            li *= (x - xj) / (xi - xj);
        }
        acc += li * traj.zeta_dot[static_cast<std::size_t>(first) + i];
    }
    return acc;
}

cplx psi_S_eval(const Trajectory& traj, double r, double t, Mass m) {
    if (!(r > 0.0)) throw DomainError("psi_S_eval: r must be positive");
    check_time(traj, t);
    if (t < r) return {};
    const double tau = t - r;
    const cplx direct = interpolate_zeta(traj, tau) / (4.0 * kPi * r);
    const cplx tail = retarded_integral(traj, r, tau, m.value(),
                                        [&](double s) { return interpolate_zeta(traj, s); });
    return direct - m.value() / (4.0 * kPi) * tail;
}

cplx psi_S_dot_eval(const Trajectory& traj, double r, double t, Mass m) {
    if (!(r > 0.0)) throw DomainError("psi_S_dot_eval: r must be positive");
    check_time(traj, t);
    if (t < r) return {};
    const double tau = t - r;
    const double mv = m.value();
    const cplx direct = interpolate_zeta_dot(traj, tau) / (4.0 * kPi * r);
    const cplx cone = cone_kernel(r, tau, mv) * traj.zeta[0];
    const cplx tail = retarded_integral(traj, r, tau, mv,
                                        [&](double s) { return interpolate_zeta_dot(traj, s); });
    return direct - mv / (4.0 * kPi) * (cone + tail);
}

std::vector<double> uniform_grid(double dr, double R_out) {
    if (!(dr > 0.0) || !(R_out >= dr)) throw ConfigError("grid needs dr > 0 and R_out >= dr");
    const auto n = static_cast<std::size_t>(std::llround(R_out / dr));
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = static_cast<double>(i + 1) * dr;
    return r;
}

FieldSnapshot snapshot(const RadialState& state, const Trajectory& traj, double t,
                       const std::vector<double>& grid, Mass m, const QuadratureConfig& quad) {
    const std::size_t k = traj.index_of(t);
    FieldSnapshot s;
    s.t = traj.time(k);
    s.r = grid;
    s.psi.resize(grid.size());
    s.psi_dot.resize(grid.size());
    s.zeta = traj.zeta[k];
    s.eta = traj.zeta_dot[k];
    const long long n = static_cast<long long>(grid.size());
#pragma omp parallel for schedule(dynamic, 8)
    for (long long i = 0; i < n; ++i) {
        const double r = grid[i];
        const FreeFieldValue f = freefield_eval(state, r, s.t, m, quad);
        s.psi[i] = f.psi + psi_S_eval(traj, r, s.t, m);
        s.psi_dot[i] = f.psi_dot + psi_S_dot_eval(traj, r, s.t, m);
    }
    s.validate();
    return s;
}

double local_norm(const FieldSnapshot& snap, double R) {
    const auto w = radial_weights(snap.r, R);
    double acc = w[0] * (std::norm(snap.zeta) + std::norm(snap.eta)) / (4.0 * kPi);
    for (std::size_t i = 1; i < w.size(); ++i) {
        if (w[i] == 0.0) continue;
        const double r = snap.r[i - 1];
        acc += w[i] * 4.0 * kPi * r * r * (std::norm(snap.psi[i - 1]) + std::norm(snap.psi_dot[i - 1]));
    }
    return std::sqrt(std::max(acc, 0.0));
}

cplx psi_reg_at_origin(const FieldSnapshot& snap, Mass m) {
    if (snap.r.size() < 3) throw InputError("need three grid points to extrapolate psi_reg(0)");
    cplx acc{};
    for (int i = 0; i < 3; ++i) {
        double li = 1.0;
        for (int j = 0; j < 3; ++j) {
            if (j != i) li *= (0.0 - snap.r[j]) / (snap.r[i] - snap.r[j]);
        }
        acc += li * (snap.psi[i] - snap.zeta * green_G(snap.r[i], m));
    }
    return acc;
}

EnergyValue energy(const FieldSnapshot& snap, const PolynomialPotential& p, Mass m,
                   const EnergyOptions& opts) {
    snap.validate();
    const std::size_t n = snap.r.size();
    if (n < 6) throw InputError("energy needs at least 6 grid points");
    const double h = snap.r[1] - snap.r[0];
    for (std::size_t i = 1; i < n; ++i) {
        if (std::fabs(snap.r[i] - snap.r[i - 1] - h) > 1e-9 * snap.r[i]) {
            throw InputError("energy needs a uniform radial grid");
        }
    }
    const double mv = m.value();
    std::vector<cplx> reg(n), dreg(n);
    for (std::size_t i = 0; i < n; ++i) reg[i] = snap.psi[i] - snap.zeta * green_G(snap.r[i], m);
    for (std::size_t i = 0; i < n; ++i) {
        cplx d;
        if (i >= 2 && i + 2 < n) {
            d = reg[i - 2] - 8.0 * reg[i - 1] + 8.0 * reg[i + 1] - reg[i + 2];
        } else if (i == 0) {
            d = -25.0 * reg[0] + 48.0 * reg[1] - 36.0 * reg[2] + 16.0 * reg[3] - 3.0 * reg[4];
        } else if (i == 1) {
            d = -3.0 * reg[0] - 10.0 * reg[1] + 18.0 * reg[2] - 6.0 * reg[3] + reg[4];
        } else if (i == n - 2) {
            d = 3.0 * reg[n - 1] + 10.0 * reg[n - 2] - 18.0 * reg[n - 3] + 6.0 * reg[n - 4] - reg[n - 5];
        } else {
            d = 25.0 * reg[n - 1] - 48.0 * reg[n - 2] + 36.0 * reg[n - 3] - 16.0 * reg[n - 4] +
                3.0 * reg[n - 5];
        }
        dreg[i] = d / (12.0 * h);
    }

    std::vector<double> density(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = snap.r[i];
        density[i] = 0.5 * 4.0 * kPi * r * r *
                     (std::norm(snap.psi_dot[i]) + std::norm(dreg[i]) + mv * mv * std::norm(reg[i]));
    }
    const auto w = radial_weights(snap.r, snap.r.back());
    EnergyValue e;
    e.field = w[0] * 0.5 * std::norm(snap.eta) / (4.0 * kPi);
    for (std::size_t i = 0; i < n; ++i) e.field += w[i + 1] * density[i];
    e.potential = potential_U(p, snap.zeta);
    e.H = e.field + 0.5 * e.potential;

    // Exponential extrapolation of the density beyond R_out, doubled so that
    // it bounds power-law corrections to the exponential decay.
    const std::size_t lag = std::min<std::size_t>(n / 2, std::max<std::size_t>(1, std::lround(1.0 / h)));
    const double d_end = density[n - 1];
    const double d_in = density[n - 1 - lag];
    const double span = snap.r[n - 1] - snap.r[n - 1 - lag];
    if (d_end > 0.0) {
        if (d_in > d_end) {
            e.tail_estimate = 2.0 * d_end * span / std::log(d_in / d_end);
        } else {
            e.tail_estimate = d_end * snap.r.back();
        }
    }
    e.tail_warning = std::abs(reg[n - 1]) > opts.tail_tolerance;
    return e;
}

}  // namespace pointkg
