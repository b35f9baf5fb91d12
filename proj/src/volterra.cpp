#include "pointkg/volterra.hpp"

#include <cmath>
#include <numbers>

#include "pointkg/errors.hpp"

namespace pointkg {

namespace {

constexpr double kPi = std::numbers::pi;

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

std::size_t SolverConfig::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("solver.dt must be positive");
    if (!(T >= dt) || !std::isfinite(T)) throw ConfigError("solver.T must be at least dt");
    if (!(blowup_threshold > 0.0)) throw ConfigError("solver.blowup_threshold must be positive");
    if (!(corrector_tol > 0.0)) throw ConfigError("solver.corrector_tol must be positive");
    if (corrector_max_iter < 1) throw ConfigError("solver.corrector_max_iter must be >= 1");
    const double steps = T / dt;
    const double n = std::round(steps);
    if (std::fabs(steps - n) > 1e-9 * n) throw ConfigError("solver.T must be a multiple of solver.dt");
    return static_cast<std::size_t>(n);
}

std::string to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::ok: return "ok";
        case SolveStatus::blowup: return "blowup";
        case SolveStatus::corrector_failure: return "corrector_failure";
    }
    return "unknown";
}

std::size_t Trajectory::index_of(double t) const {
    if (size() == 0) throw InputError("empty trajectory");
    const double x = (t - t0) / dt;
    const double k = std::round(x);
    if (std::fabs(x - k) > 1e-9 * std::max(1.0, std::fabs(x)) || k < 0.0 ||
        k > static_cast<double>(size() - 1)) {
        throw InputError("time " + std::to_string(t) + " is not on the trajectory grid");
    }
    return static_cast<std::size_t>(k);
}

Trajectory solve_reduced(const RadialState& state, const PolynomialPotential& p, Mass m,
                         const SolverConfig& cfg, const QuadratureConfig& quad) {
    const std::size_t steps = cfg.validate();
    const auto lam = lambda_samples(state, cfg.dt, steps + 1, m, quad);
    return solve_reduced(state.zeta0, lam, p, m, cfg);
}

Trajectory solve_reduced(cplx zeta0, const std::vector<cplx>& lambda, const PolynomialPotential& p,
                         Mass m, const SolverConfig& cfg) {
    const std::size_t steps = cfg.validate();
    if (lambda.size() != steps + 1) throw InputError("lambda must have T/dt + 1 samples");
    if (!finite(zeta0)) throw InputError("zeta0 must be finite");

    const double mv = m.value();
    const double h = cfg.dt;
    const std::size_t n_total = steps + 1;
    const TrapezoidWeights w = trapezoid_weights(h, n_total, m);
    HistoryConvolution hist(w.c, cfg.conv_mode, n_total);

    Trajectory tr;
    tr.dt = h;
    tr.zeta.reserve(n_total);
    tr.lam.reserve(n_total);
    tr.zeta_dot.reserve(n_total);
    tr.conv.reserve(n_total);

    auto rhs = [&](cplx z, cplx conv, cplx lam) {
        return mv * z - mv * conv - 4.0 * kPi * force_F(p, z) + 4.0 * kPi * lam;
    };

    cplx z = zeta0;
    cplx f = rhs(z, {}, lambda[0]);
    tr.zeta.push_back(z);
    tr.lam.push_back(lambda[0]);
    tr.zeta_dot.push_back(f);
    tr.conv.push_back({});
    hist.push(z);

    for (std::size_t n = 0; n < steps; ++n) {
        const std::size_t k = n + 1;
        // C_k(x) = a0 x + H_k - a_k zeta0, affine in the unknown x = zeta_k.
        const cplx fixed = hist.history(k) - w.a[k] * zeta0;
        const cplx lam = lambda[k];
        cplx x = z + h * f;
        bool converged = false;
        cplx fx{};
        for (int it = 0; it < cfg.corrector_max_iter; ++it) {
            fx = rhs(x, w.a[0] * x + fixed, lam);
            const cplx next = z + 0.5 * h * (f + fx);
            const double delta = std::abs(next - x);
            x = next;
            if (!finite(x)) break;
            if (delta <= cfg.corrector_tol * std::max(1.0, std::abs(x))) {
                converged = true;
                break;
            }
        }
        const double t = static_cast<double>(k) * h;
        if (!converged) {
            tr.status = SolveStatus::corrector_failure;
            tr.message = "corrector did not converge at t = " + std::to_string(t) +
                         "; try a smaller dt (last valid t = " + std::to_string(t - h) + ")";
            return tr;
        }
        if (!(std::abs(x) <= cfg.blowup_threshold)) {
            tr.status = SolveStatus::blowup;
            tr.message = "|zeta| exceeded " + std::to_string(cfg.blowup_threshold) + " at t = " +
                         std::to_string(t) + " (last valid t = " + std::to_string(t - h) + ")";
            return tr;
        }
        const cplx conv = w.a[0] * x + fixed;
        z = x;
        f = rhs(z, conv, lam);
        tr.zeta.push_back(z);
        tr.lam.push_back(lam);
        tr.zeta_dot.push_back(f);
        tr.conv.push_back(conv);
        hist.push(z);
    }
    return tr;
}

double stationary_residual(const PolynomialPotential& p, Mass m, double omega, double q) {
    if (!(std::fabs(omega) <= m)) throw DomainError("stationary_residual needs |omega| <= m");
    const double shift = -omega * omega / (m + std::sqrt((m - omega) * (m + omega)));
    return std::fabs(shift / (4.0 * kPi) + radial_b(p, q * q));
}

cplx convolution_tail(const Trajectory& traj, double t, Mass m) {
    const std::size_t k = traj.index_of(t);
    if (traj.conv.size() == traj.size()) return traj.conv[k];
    const TrapezoidWeights w = trapezoid_weights(traj.dt, k + 1, m);
    return trapezoid_convolution(w, traj.zeta, k);
}

}  // namespace pointkg
