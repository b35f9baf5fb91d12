#include "pointkg/solitary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "pointkg/errors.hpp"
#include "pointkg/radial.hpp"
#include "pointkg/roots.hpp"

namespace pointkg {

namespace {

constexpr double kPi = std::numbers::pi;

// m - sqrt(m^2 - omega^2) without cancellation for small omega.
double gap_shift(double omega, double m) {
    return omega * omega / (m + std::sqrt((m - omega) * (m + omega)));
}

// Per-radius quantities of the snapshot, prepared once.
struct Prepared {
    int R_max = 0;
    std::vector<std::vector<double>> weights;  // [R-1][0..k], entry 0 at the origin
    std::vector<double> S;                     // ||(psi, psi_dot)||^2 on B_R
};

Prepared prepare(const FieldSnapshot& s, int R_max) {
    Prepared p;
    p.R_max = R_max;
    for (int R = 1; R <= R_max; ++R) {
        auto w = radial_weights(s.r, R);
        while (w.size() > 1 && w.back() == 0.0) w.pop_back();
        double acc = w[0] * (std::norm(s.zeta) + std::norm(s.eta)) / (4.0 * kPi);
        for (std::size_t i = 1; i < w.size(); ++i) {
            const double r = s.r[i - 1];
            acc += w[i] * 4.0 * kPi * r * r * (std::norm(s.psi[i - 1]) + std::norm(s.psi_dot[i - 1]));
        }
        p.S.push_back(acc);
        p.weights.push_back(std::move(w));
    }
    return p;
}

// Overlaps of the snapshot with the unit profile Y = e^{-g r}/(4 pi r) at one omega.
struct Overlap {
    double omega;
    std::vector<double> P;  // ||Y||^2 on B_R
    std::vector<cplx> c;    // <psi, Y>_R + i omega <psi_dot, Y>_R
};

Overlap overlap(const FieldSnapshot& s, const Prepared& pre, double omega, double m) {
    const double g = std::sqrt((m - omega) * (m + omega));
    const std::size_t n = pre.weights.back().size() - 1;
    std::vector<double> areaY(n), Y(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = s.r[i];
        Y[i] = std::exp(-g * r) / (4.0 * kPi * r);
        areaY[i] = 4.0 * kPi * r * r * Y[i];
    }
    Overlap o{omega, {}, {}};
    const cplx iw{0.0, omega};
    for (const auto& w : pre.weights) {
        double P = w[0] / (4.0 * kPi);
        cplx a = w[0] * s.zeta / (4.0 * kPi);
        cplx b = w[0] * s.eta / (4.0 * kPi);
        for (std::size_t i = 1; i < w.size(); ++i) {
            const double wy = w[i] * areaY[i - 1];
            P += wy * Y[i - 1];
            a += wy * s.psi[i - 1];
            b += wy * s.psi_dot[i - 1];
        }
        o.P.push_back(P);
        o.c.push_back(a + iw * b);
    }
    return o;
}

double metric_from(const Prepared& pre, const Overlap& o, double q, double theta,
                   std::vector<double>* d_out = nullptr) {
    const cplx rot = std::polar(1.0, -theta);
    const double qq = q * q * (1.0 + o.omega * o.omega);
    double acc = 0.0;
    double weight = 0.5;
    for (int R = 0; R < pre.R_max; ++R, weight *= 0.5) {
        const double d2 = pre.S[R] + qq * o.P[R] - 2.0 * q * (rot * o.c[R]).real();
        const double d = std::sqrt(std::max(d2, 0.0));
        if (d_out) (*d_out)[R] = d;
        acc += weight * d / (1.0 + d);
    }
    return acc;
}

struct Candidate {
    double metric = std::numeric_limits<double>::infinity();
    double omega = 0.0;
    double q = 0.0;
    double theta = 0.0;
};

double wrap_phase(double th) {
    th = std::fmod(th, 2.0 * kPi);
    if (th < 0.0) th += 2.0 * kPi;
    if (th >= 2.0 * kPi) th = 0.0;
    return th;
}

// Best phase for fixed (omega, q) by fixed-point iteration of the stationarity
// condition theta = arg sum alpha_R c_R.
Candidate align(const Prepared& pre, const Overlap& o, double q, int iterations) {
    cplx s{};
    double weight = 0.5;
    for (int R = 0; R < pre.R_max; ++R, weight *= 0.5) s += weight * o.c[R];
    double theta = std::abs(s) > 0.0 ? std::arg(s) : 0.0;
    std::vector<double> d(pre.R_max);
    double best = metric_from(pre, o, q, theta, &d);
    double best_theta = theta;
    for (int it = 0; it < iterations; ++it) {
        cplx acc{};
        weight = 0.5;
        for (int R = 0; R < pre.R_max; ++R, weight *= 0.5) {
            const double dr = std::max(d[R], 1e-300);
            acc += (weight / ((1.0 + d[R]) * (1.0 + d[R]) * dr)) * o.c[R];
        }
        if (!(std::abs(acc) > 0.0)) break;
        theta = std::arg(acc);
        const double val = metric_from(pre, o, q, theta, &d);
        if (val < best) {
            best = val;
            best_theta = theta;
        }
    }
    return {best, o.omega, q, wrap_phase(best_theta)};
}

Candidate best_at(const FieldSnapshot& s, const Prepared& pre, const PolynomialPotential& p, Mass m,
                  double omega, int phase_iterations) {
    Candidate best;
    const auto roots = solve_amplitudes(p, omega, m);
    if (roots.empty()) return best;
    const Overlap o = overlap(s, pre, omega, m);
    for (double q : roots) {
        const Candidate c = align(pre, o, q, phase_iterations);
        if (c.metric < best.metric) best = c;
    }
    return best;
}

// Direct evaluation from differences, used for the reported distance.
double direct_metric(const FieldSnapshot& s, const Prepared& pre, const SolitaryWave& w, double m,
                     bool zero) {
    const double g = zero ? 0.0 : std::sqrt((m - w.omega) * (m + w.omega));
    const cplx amp = zero ? cplx{} : std::polar(w.q, w.theta);
    const cplx iw{0.0, w.omega};
    const cplx d0 = s.zeta - amp;
    const cplx d1 = s.eta + iw * amp;
    const double origin = (std::norm(d0) + std::norm(d1)) / (4.0 * kPi);
    double acc = 0.0;
    double weight = 0.5;
    for (const auto& wts : pre.weights) {
        double d2 = wts[0] * origin;
        for (std::size_t i = 1; i < wts.size(); ++i) {
            const double r = s.r[i - 1];
            const cplx y = zero ? cplx{} : amp * (std::exp(-g * r) / (4.0 * kPi * r));
            const cplx a = s.psi[i - 1] - y;
            const cplx b = s.psi_dot[i - 1] + iw * y;
            d2 += wts[i] * 4.0 * kPi * r * r * (std::norm(a) + std::norm(b));
        }
        const double d = std::sqrt(std::max(d2, 0.0));
        acc += weight * d / (1.0 + d);
        weight *= 0.5;
    }
    return acc;
}

}  // namespace

double qsol_residual(const PolynomialPotential& p, Mass m, double omega, double q) {
    return std::fabs(gap_shift(omega, m) - 4.0 * kPi * radial_b(p, q * q));
}

std::vector<double> solve_amplitudes(const PolynomialPotential& p, double omega, Mass m) {
    if (!(std::fabs(omega) < m)) {
        throw DomainError("nonzero solitary waves exist only for omega in (-m, m), got omega = " +
                          std::to_string(omega));
    }
    const double c = gap_shift(omega, m) / (4.0 * kPi);
    auto coeffs = p.b_coefficients();
    coeffs[0] -= c;
    std::vector<double> q;
    for (double s : nonnegative_real_roots(coeffs)) {
        // Newton polish on s; harmless for roots already at machine precision.
        for (int it = 0; it < 3 && s > 0.0; ++it) {
            const double db = radial_b_prime(p, s);
            if (db == 0.0) break;
            const double next = s - (radial_b(p, s) - c) / db;
            if (!(next >= 0.0)) break;
            s = next;
        }
        const double qi = std::sqrt(s);
        if (qsol_residual(p, m, omega, qi) > 1e-10) {
            throw NumericalFault("amplitude root failed residual check at omega = " +
                                 std::to_string(omega));
        }
        q.push_back(qi);
    }
    std::sort(q.begin(), q.end());
    q.erase(std::unique(q.begin(), q.end()), q.end());
    return q;
}

cplx soliton_profile(const SolitaryWave& w, double r, Mass m) {
    if (!(r > 0.0)) throw DomainError("soliton_profile: pole at r = 0");
    if (!(std::fabs(w.omega) < m)) throw DomainError("soliton_profile: |omega| must be < m");
    const double g = std::sqrt((m - w.omega) * (m + w.omega));
    return std::polar(w.q, w.theta) * (std::exp(-g * r) / (4.0 * kPi * r));
}

ManifoldFit manifold_distance(const FieldSnapshot& snap, const PolynomialPotential& p, Mass m,
                              int R_max, const ManifoldSearch& opts) {
    snap.validate();
    if (R_max < 1) throw ConfigError("R_max must be at least 1");
    const auto inside = std::count_if(snap.r.begin(), snap.r.end(), [](double r) { return r <= 1.0; });
    if (inside < 4) {
        throw ConfigError("radial grid too coarse: need at least 4 samples inside r <= 1, got " +
                          std::to_string(inside));
    }
    if (snap.r.back() < R_max * (1.0 - 1e-12)) {
        throw InputError("snapshot outer radius " + std::to_string(snap.r.back()) +
                         " is below R_max = " + std::to_string(R_max));
    }
    if (opts.omega_points < 3) throw ConfigError("omega search grid needs at least 3 points");

    const Prepared pre = prepare(snap, R_max);
    const double mv = m.value();
    const int n = opts.omega_points;
    auto grid_omega = [&](int j) { return mv * (-1.0 + 2.0 * (j + 1) / (n + 1.0)); };

    std::vector<Candidate> found(n);
#pragma omp parallel for schedule(dynamic)
    for (int j = 0; j < n; ++j) {
        found[j] = best_at(snap, pre, p, m, grid_omega(j), opts.phase_iterations);
    }
    int jbest = -1;
    for (int j = 0; j < n; ++j) {
        if (jbest < 0 || found[j].metric < found[jbest].metric) jbest = j;
    }

    Candidate best = found[jbest];
    if (std::isfinite(best.metric)) {
        // Golden-section refinement between the neighbouring grid points.
        const double edge = mv * (1.0 - 1e-9);
        double a = std::max(grid_omega(jbest) - 2.0 * mv / (n + 1.0), -edge);
        double b = std::min(grid_omega(jbest) + 2.0 * mv / (n + 1.0), edge);
        const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
        auto eval = [&](double w) { return best_at(snap, pre, p, m, w, opts.phase_iterations); };
        double x1 = b - invphi * (b - a);
        double x2 = a + invphi * (b - a);
        Candidate f1 = eval(x1);
        Candidate f2 = eval(x2);
        for (int it = 0; it < opts.refine_iterations && (b - a) > 1e-13 * mv; ++it) {
            if (f1.metric <= f2.metric) {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - invphi * (b - a);
                f1 = eval(x1);
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + invphi * (b - a);
                f2 = eval(x2);
            }
            if (f1.metric < best.metric) best = f1;
            if (f2.metric < best.metric) best = f2;
        }
    }

    ManifoldFit fit;
    fit.zero_wave = true;
    fit.dist = direct_metric(snap, pre, {}, mv, true);
    if (std::isfinite(best.metric)) {
        const SolitaryWave w{best.omega, best.q, best.theta};
        const double d = direct_metric(snap, pre, w, mv, w.q == 0.0);
        if (d < fit.dist) {
            fit.dist = d;
            fit.best = w;
            fit.zero_wave = w.q == 0.0;
        }
    }
    return fit;
}

}  // namespace pointkg
