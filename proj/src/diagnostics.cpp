#include "pointkg/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fftw3.h>

#include "pointkg/errors.hpp"

namespace pointkg {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> taper_weights(std::size_t n, Taper taper) {
    std::vector<double> w(n, 1.0);
    if (taper == Taper::hann && n > 1) {
        for (std::size_t j = 0; j < n; ++j) {
            const double s = std::sin(kPi * static_cast<double>(j) / static_cast<double>(n - 1));
            w[j] = s * s;
        }
    }
    return w;
}

}  // namespace

std::string to_string(Taper t) { return t == Taper::hann ? "hann" : "rect"; }

Taper parse_taper(const std::string& s) {
    if (s == "hann") return Taper::hann;
    if (s == "rect") return Taper::rect;
    throw ConfigError("unknown taper '" + s + "' (expected hann or rect)");
}

double SpectrumWindow::total_mass() const {
    double acc = 0.0;
    for (double d : density) acc += d;
    return acc * d_omega;
}

double windowed_mass(const Trajectory& traj, double t1, double t2, Taper taper) {
    const std::size_t k1 = traj.index_of(t1);
    const std::size_t k2 = traj.index_of(t2);
    if (k2 <= k1) throw InputError("spectrum window needs t2 > t1");
    const auto w = taper_weights(k2 - k1 + 1, taper);
    double acc = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) acc += std::norm(w[j] * traj.zeta[k1 + j]);
    return acc * traj.dt;
}

SpectrumWindow windowed_spectrum(const Trajectory& traj, double t1, double t2, Taper taper, Mass m,
                                 int pad_factor) {
    const std::size_t k1 = traj.index_of(t1);
    const std::size_t k2 = traj.index_of(t2);
    if (k2 <= k1) throw InputError("spectrum window needs t2 > t1");
    const std::size_t n = k2 - k1 + 1;
    if (n < 1024) {
        throw InputError("spectrum window has " + std::to_string(n) + " samples; at least 1024 needed");
    }
    const double length = traj.time(k2) - traj.time(k1);
    if (length < 20.0 * 2.0 * kPi / m - 1e-9) {
        throw InputError("spectrum window shorter than 20 gap periods (" +
                         std::to_string(20.0 * 2.0 * kPi / m) + ")");
    }
    if (kPi / traj.dt < 4.0 * m) throw InputError("time step too coarse to resolve [-4m, 4m]");
    if (pad_factor < 8) throw InputError("zero padding factor must be at least 8");

    std::size_t P = 1;
    while (P < static_cast<std::size_t>(pad_factor) * n) P *= 2;

    fftw_complex* buf = fftw_alloc_complex(P);
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(P), buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    const auto w = taper_weights(n, taper);
    for (std::size_t j = 0; j < P; ++j) {
        const cplx v = j < n ? w[j] * traj.zeta[k1 + j] : cplx{};
        buf[j][0] = v.real();
        buf[j][1] = v.imag();
    }
    fftw_execute(plan);

    SpectrumWindow sw;
    sw.t1 = traj.time(k1);
    sw.t2 = traj.time(k2);
    sw.taper = taper;
    sw.d_omega = 2.0 * kPi / (static_cast<double>(P) * traj.dt);
    const long long half = static_cast<long long>(P / 2);
    sw.omega.reserve(P + 1);
    sw.density.reserve(P + 1);
    for (long long k = -half; k <= half; ++k) {
        const std::size_t idx = static_cast<std::size_t>((k + static_cast<long long>(P)) % static_cast<long long>(P));
        const double re = buf[idx][0] * traj.dt;
        const double im = buf[idx][1] * traj.dt;
        double d = (re * re + im * im) / (2.0 * kPi);
        // The Nyquist bin appears at both ends of the symmetric grid.
        if (k == -half || k == half) d *= 0.5;
        sw.omega.push_back(static_cast<double>(k) * sw.d_omega);
        sw.density.push_back(d);
    }
    fftw_destroy_plan(plan);
    fftw_free(buf);
    return sw;
}

Concentration concentration(const SpectrumWindow& sw, double delta) {
    const double total = sw.total_mass();
    if (!(total > 0.0)) throw InputError("concentration undefined for a zero spectrum");
    if (!(delta > 0.0)) throw InputError("concentration half-width must be positive");
    const auto peak = static_cast<std::size_t>(
        std::max_element(sw.density.begin(), sw.density.end()) - sw.density.begin());
    const double w0 = sw.omega[peak];
    const double reach = 2.0 * sw.resolution();
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < sw.omega.size(); ++i) {
        if (std::fabs(sw.omega[i] - w0) <= reach) {
            num += sw.omega[i] * sw.density[i];
            den += sw.density[i];
        }
    }
    Concentration c;
    c.omega_hat = num / den;
    double inside = 0.0;
    for (std::size_t i = 0; i < sw.omega.size(); ++i) {
        if (std::fabs(sw.omega[i] - c.omega_hat) <= delta) inside += sw.density[i];
    }
    c.ratio = std::clamp(inside * sw.d_omega / total, 0.0, 1.0);
    return c;
}

double gap_mass_fraction(const SpectrumWindow& sw, Mass m) {
    const double total = sw.total_mass();
    if (!(total > 0.0)) throw InputError("gap fraction undefined for a zero spectrum");
    double inside = 0.0;
    for (std::size_t i = 0; i < sw.omega.size(); ++i) {
        if (std::fabs(sw.omega[i]) <= m) inside += sw.density[i];
    }
    return std::clamp(inside * sw.d_omega / total, 0.0, 1.0);
}

double outside_gap_weighted_mass(const SpectrumWindow& sw, Mass m) {
    double acc = 0.0;
    for (std::size_t i = 0; i < sw.omega.size(); ++i) {
        const double w = sw.omega[i];
        if (std::fabs(w) > m) acc += sw.density[i] * (kappa(w, m).real() / w);
    }
    return acc * sw.d_omega;
}

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw InputError("linear fit needs matching series of length >= 2");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 0.0)) throw InputError("linear fit needs distinct abscissae");
    const double slope = sxy / sxx;
    return {slope, my - slope * mx};
}

DecayFit decay_fit(const std::vector<std::pair<double, double>>& series) {
    if (series.size() < 8) throw InputError("decay fit needs at least 8 points");
    std::vector<double> x, y;
    for (const auto& [t, v] : series) {
        if (!(t > 0.0) || !(v > 0.0)) throw InputError("decay fit needs positive times and values");
        x.push_back(std::log(t));
        y.push_back(std::log(v));
    }
    const LinearFit lf = linear_fit(x, y);
    double my = 0.0;
    for (double v : y) my += v;
    my /= static_cast<double>(y.size());
    double ss_res = 0.0, ss_tot = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double e = y[i] - (lf.intercept + lf.slope * x[i]);
        ss_res += e * e;
        ss_tot += (y[i] - my) * (y[i] - my);
    }
    return {lf.slope, lf.intercept, ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0};
}

std::vector<AttractionPoint> attraction_series(const RadialState& state, const Trajectory& traj,
                                               const std::vector<double>& times, const PolynomialPotential& p,
                                               Mass m, int R_max, double dr, const QuadratureConfig& quad) {
    const auto grid = uniform_grid(dr, static_cast<double>(R_max));
    std::vector<AttractionPoint> out;
    for (double t : times) {
        const FieldSnapshot s = snapshot(state, traj, t, grid, m, quad);
        const ManifoldFit fit = manifold_distance(s, p, m, R_max);
        out.push_back({s.t, fit.dist, fit.best});
    }
    return out;
}

double free_local_norm(const RadialState& state, double t, double R, double dr, Mass m,
                       const QuadratureConfig& quad) {
    const auto grid = uniform_grid(dr, R);
    FieldSnapshot s;
    s.t = t;
    s.r = grid;
    s.psi.resize(grid.size());
    s.psi_dot.resize(grid.size());
    if (t == 0.0) {
        s.zeta = state.zeta0;
        s.eta = state.eta0;
    }
    const long long n = static_cast<long long>(grid.size());
#pragma omp parallel for schedule(dynamic, 8)
    for (long long i = 0; i < n; ++i) {
        const FreeFieldValue f = freefield_eval(state, grid[i], t, m, quad);
        s.psi[i] = f.psi;
        s.psi_dot[i] = f.psi_dot;
    }
    return local_norm(s, R);
}

}  // namespace pointkg
