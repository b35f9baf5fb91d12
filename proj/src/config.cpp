#include "pointkg/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>

#include "pointkg/errors.hpp"
#include "pointkg/quadrature.hpp"
#include "pointkg/solitary.hpp"

namespace pointkg {

using nlohmann::json;

namespace {

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + " must be an object");
    for (const auto& [key, value] : j.items()) {
        if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
    }
}

double get_number(const json& j, const std::string& key, double fallback, const std::string& where) {
    if (!j.contains(key)) return fallback;
    const auto& v = j.at(key);
    if (!v.is_number()) throw ConfigError(where + "." + key + " must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(where + "." + key + " must be finite");
    return x;
}

int get_int(const json& j, const std::string& key, int fallback, const std::string& where) {
    if (!j.contains(key)) return fallback;
    const auto& v = j.at(key);
    if (!v.is_number_integer()) throw ConfigError(where + "." + key + " must be an integer");
    return v.get<int>();
}

std::string get_string(const json& j, const std::string& key, const std::string& fallback,
                       const std::string& where) {
    if (!j.contains(key)) return fallback;
    const auto& v = j.at(key);
    if (!v.is_string()) throw ConfigError(where + "." + key + " must be a string");
    return v.get<std::string>();
}

std::vector<double> get_numbers(const json& j, const std::string& key, const std::vector<double>& fallback,
                                const std::string& where) {
    if (!j.contains(key)) return fallback;
    const auto& v = j.at(key);
    if (!v.is_array()) throw ConfigError(where + "." + key + " must be an array of numbers");
    std::vector<double> out;
    for (const auto& x : v) {
        if (!x.is_number() || !std::isfinite(x.get<double>())) {
            throw ConfigError(where + "." + key + " must contain finite numbers");
        }
        out.push_back(x.get<double>());
    }
    return out;
}

cplx parse_complex(const json& v, const std::string& where) {
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        throw ConfigError(where + " must be a number or a [re, im] pair");
    }
    const cplx z{v[0].get<double>(), v[1].get<double>()};
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw ConfigError(where + " must be finite");
    return z;
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

RadialShape parse_shape(const json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
        throw ConfigError(where + " must be an object with a string 'kind'");
    }
    const std::string kind = j.at("kind").get<std::string>();
    RadialShape s;
    if (kind == "gaussian") {
        check_keys(j, {"kind", "center", "width"}, where);
        s = GaussianShape{get_number(j, "center", 0.0, where), get_number(j, "width", 1.0, where)};
    } else if (kind == "yukawa_difference") {
        check_keys(j, {"kind", "a", "b"}, where);
        s = YukawaDifferenceShape{get_number(j, "a", 0.5, where), get_number(j, "b", 1.0, where)};
    } else if (kind == "bump") {
        check_keys(j, {"kind", "center", "width"}, where);
        s = BumpShape{get_number(j, "center", 0.0, where), get_number(j, "width", 1.0, where)};
    } else if (kind == "table") {
        check_keys(j, {"kind", "spacing", "values"}, where);
        try {
            s = TableShape(get_numbers(j, "values", {}, where), get_number(j, "spacing", 0.0, where));
        } catch (const InputError& e) {
            throw ConfigError(where + ": " + e.what());
        }
    } else {
        throw ConfigError(where + ".kind '" + kind +
                          "' is not one of gaussian, yukawa_difference, bump, table");
    }
    try {
        (void)shape_support(s);
    } catch (const InputError& e) {
        throw ConfigError(where + ": " + e.what());
    }
    return s;
}

json shape_json(const RadialShape& s) {
    return std::visit(
        [](const auto& v) -> json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, GaussianShape>) {
                return {{"kind", "gaussian"}, {"center", v.center}, {"width", v.width}};
            } else if constexpr (std::is_same_v<T, YukawaDifferenceShape>) {
                return {{"kind", "yukawa_difference"}, {"a", v.a}, {"b", v.b}};
            } else if constexpr (std::is_same_v<T, BumpShape>) {
                return {{"kind", "bump"}, {"center", v.center}, {"width", v.width}};
            } else {
                return {{"kind", "table"}, {"spacing", v.spacing()}, {"values", v.samples()}};
            }
        },
        s);
}

RadialProfile parse_profile(const json& j, const std::string& where) {
    if (!j.is_array()) throw ConfigError(where + " must be an array of terms");
    RadialProfile p;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string w = where + "[" + std::to_string(i) + "]";
        check_keys(j[i], {"coefficient", "shape"}, w);
        if (!j[i].contains("shape")) throw ConfigError(w + " needs a shape");
        const cplx c = j[i].contains("coefficient") ? parse_complex(j[i].at("coefficient"), w + ".coefficient")
                                                    : cplx{1.0, 0.0};
        p.terms.push_back({c, parse_shape(j[i].at("shape"), w + ".shape")});
    }
    return p;
}

json profile_json(const RadialProfile& p) {
    json arr = json::array();
    for (const auto& t : p.terms) arr.push_back({{"coefficient", complex_json(t.coefficient)}, {"shape", shape_json(t.shape)}});
    return arr;
}

InitialDataConfig parse_initial(const json& j) {
    const std::string where = "initial_data";
    if (!j.is_object()) throw ConfigError(where + " must be an object");
    InitialDataConfig c;
    c.preset = get_string(j, "preset", c.preset, where);
    if (c.preset == "zero") {
        check_keys(j, {"preset"}, where);
    } else if (c.preset == "soliton" || c.preset == "perturbed_soliton") {
        std::set<std::string> keys{"preset", "omega", "theta", "root_index"};
        if (c.preset == "perturbed_soliton") keys.insert("perturbation");
        check_keys(j, keys, where);
        c.omega = get_number(j, "omega", c.omega, where);
        c.theta = get_number(j, "theta", c.theta, where);
        c.root_index = get_int(j, "root_index", c.root_index, where);
        if (c.preset == "perturbed_soliton" && j.contains("perturbation")) {
            const auto& pj = j.at("perturbation");
            const std::string pw = where + ".perturbation";
            check_keys(pj, {"shape", "relative_size", "component"}, pw);
            if (pj.contains("shape")) c.perturbation.shape = parse_shape(pj.at("shape"), pw + ".shape");
            c.perturbation.relative_size = get_number(pj, "relative_size", c.perturbation.relative_size, pw);
            c.perturbation.component = get_string(pj, "component", c.perturbation.component, pw);
            if (c.perturbation.component != "psi" && c.perturbation.component != "pi") {
                throw ConfigError(pw + ".component must be 'psi' or 'pi'");
            }
            if (!(c.perturbation.relative_size >= 0.0)) throw ConfigError(pw + ".relative_size must be >= 0");
        }
    } else if (c.preset == "green") {
        check_keys(j, {"preset", "zeta0", "eta0"}, where);
        if (j.contains("zeta0")) c.zeta0 = parse_complex(j.at("zeta0"), where + ".zeta0");
        if (j.contains("eta0")) c.eta0 = parse_complex(j.at("eta0"), where + ".eta0");
    } else if (c.preset == "custom") {
        check_keys(j, {"preset", "zeta0", "eta0", "psi_reg", "pi_reg"}, where);
        if (j.contains("zeta0")) c.zeta0 = parse_complex(j.at("zeta0"), where + ".zeta0");
        if (j.contains("eta0")) c.eta0 = parse_complex(j.at("eta0"), where + ".eta0");
        if (j.contains("psi_reg")) c.psi_reg = parse_profile(j.at("psi_reg"), where + ".psi_reg");
        if (j.contains("pi_reg")) c.pi_reg = parse_profile(j.at("pi_reg"), where + ".pi_reg");
    } else {
        throw ConfigError(where + ".preset '" + c.preset +
                          "' is not one of zero, soliton, perturbed_soliton, green, custom");
    }
    return c;
}

json initial_json(const InitialDataConfig& c) {
    json j{{"preset", c.preset}};
    if (c.preset == "soliton" || c.preset == "perturbed_soliton") {
        j["omega"] = c.omega;
        j["theta"] = c.theta;
        j["root_index"] = c.root_index;
        if (c.preset == "perturbed_soliton") {
            j["perturbation"] = {{"shape", shape_json(c.perturbation.shape)},
                                 {"relative_size", c.perturbation.relative_size},
                                 {"component", c.perturbation.component}};
        }
    } else if (c.preset == "green") {
        j["zeta0"] = complex_json(c.zeta0);
        j["eta0"] = complex_json(c.eta0);
    } else if (c.preset == "custom") {
        j["zeta0"] = complex_json(c.zeta0);
        j["eta0"] = complex_json(c.eta0);
        j["psi_reg"] = profile_json(c.psi_reg);
        j["pi_reg"] = profile_json(c.pi_reg);
    }
    return j;
}

ConvMode parse_mode(const std::string& s) {
    if (s == "naive") return ConvMode::naive;
    if (s == "blocked_fft") return ConvMode::blocked_fft;
    throw ConfigError("solver.conv_mode must be 'naive' or 'blocked_fft', got '" + s + "'");
}

std::string mode_name(ConvMode m) { return m == ConvMode::naive ? "naive" : "blocked_fft"; }

double shape_l2(const RadialShape& s) {
    QuadratureConfig q;
    const double top = shape_support(s);
    if (!(top > 0.0)) return 0.0;
    auto f = [&](double r) {
        const double v = shape_value(s, r);
        return 4.0 * std::numbers::pi * r * r * v * v;
    };
    return std::sqrt(integrate(f, 0.0, top, q).value);
}

}  // namespace

RunConfig parse_config(const json& j) {
    check_keys(j, {"schema_version", "model", "initial_data", "solver", "grid", "diagnostics", "verification",
                   "scan", "output"},
               "config");
    RunConfig c;
    c.schema_version = get_int(j, "schema_version", kConfigSchemaVersion, "config");
    if (c.schema_version != kConfigSchemaVersion) {
        throw ConfigError("unsupported schema_version " + std::to_string(c.schema_version));
    }

    if (j.contains("model")) {
        const auto& mj = j.at("model");
        check_keys(mj, {"m", "potential"}, "model");
        c.m = get_number(mj, "m", c.m, "model");
        c.potential = get_numbers(mj, "potential", c.potential, "model");
    }
    try {
        (void)c.mass();
    } catch (const DomainError& e) {
        throw ConfigError(std::string("model.m: ") + e.what());
    }
    (void)c.potential_model();

    if (j.contains("initial_data")) c.initial = parse_initial(j.at("initial_data"));

    if (j.contains("solver")) {
        const auto& sj = j.at("solver");
        const std::string w = "solver";
        check_keys(sj, {"dt", "T", "conv_mode", "blowup_threshold", "corrector_tol", "corrector_max_iter"}, w);
        c.solver.dt = get_number(sj, "dt", c.solver.dt, w);
        c.solver.T = get_number(sj, "T", c.solver.T, w);
        c.solver.conv_mode = parse_mode(get_string(sj, "conv_mode", mode_name(c.solver.conv_mode), w));
        c.solver.blowup_threshold = get_number(sj, "blowup_threshold", c.solver.blowup_threshold, w);
        c.solver.corrector_tol = get_number(sj, "corrector_tol", c.solver.corrector_tol, w);
        c.solver.corrector_max_iter = get_int(sj, "corrector_max_iter", c.solver.corrector_max_iter, w);
    }
    (void)c.solver.validate();

    if (j.contains("grid")) {
        const auto& gj = j.at("grid");
        check_keys(gj, {"dr", "R_out"}, "grid");
        c.grid.dr = get_number(gj, "dr", c.grid.dr, "grid");
        c.grid.R_out = get_number(gj, "R_out", c.grid.R_out, "grid");
    }
    if (!(c.grid.dr > 0.0) || !(c.grid.R_out >= 6.0 * c.grid.dr)) {
        throw ConfigError("grid needs dr > 0 and R_out >= 6 dr");
    }

    if (j.contains("diagnostics")) {
        const auto& dj = j.at("diagnostics");
        const std::string w = "diagnostics";
        check_keys(dj, {"attraction_times", "energy_times", "field_times", "spectrum_windows", "taper", "R_max",
                        "attraction_dr", "delta"},
                   w);
        auto& d = c.diagnostics;
        d.attraction_times = get_numbers(dj, "attraction_times", d.attraction_times, w);
        d.energy_times = get_numbers(dj, "energy_times", d.energy_times, w);
        d.field_times = get_numbers(dj, "field_times", d.field_times, w);
        if (dj.contains("spectrum_windows")) {
            const auto& sw = dj.at("spectrum_windows");
            if (!sw.is_array()) throw ConfigError("diagnostics.spectrum_windows must be an array of [t1, t2]");
            for (const auto& p : sw) {
                if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
                    throw ConfigError("diagnostics.spectrum_windows entries must be [t1, t2]");
                }
                d.spectrum_windows.emplace_back(p[0].get<double>(), p[1].get<double>());
            }
        }
        d.taper = parse_taper(get_string(dj, "taper", to_string(d.taper), w));
        d.R_max = get_int(dj, "R_max", d.R_max, w);
        d.attraction_dr = get_number(dj, "attraction_dr", d.attraction_dr, w);
        d.delta = get_number(dj, "delta", d.delta, w);
    }
    {
        const auto& d = c.diagnostics;
        const double T = c.solver.T;
        auto in_run = [T](double t) { return t >= 0.0 && t <= T * (1.0 + 1e-12); };
        for (double t : d.attraction_times) {
            if (!in_run(t)) throw ConfigError("diagnostics.attraction_times must lie in [0, T]");
        }
        for (double t : d.energy_times) {
            if (!in_run(t)) throw ConfigError("diagnostics.energy_times must lie in [0, T]");
        }
        for (double t : d.field_times) {
            if (!in_run(t)) throw ConfigError("diagnostics.field_times must lie in [0, T]");
        }
        for (const auto& [a, b] : d.spectrum_windows) {
            if (!(a >= 0.0 && b > a && in_run(b))) {
                throw ConfigError("diagnostics.spectrum_windows must satisfy 0 <= t1 < t2 <= T");
            }
        }
        if (d.R_max < 1) throw ConfigError("diagnostics.R_max must be >= 1");
        if (!(d.attraction_dr > 0.0) || d.attraction_dr * 4.0 > 1.0) {
            throw ConfigError("diagnostics.attraction_dr must be in (0, 0.25] to put 4 samples inside r <= 1");
        }
        if (!(d.delta > 0.0)) throw ConfigError("diagnostics.delta must be positive");
        const double dt = c.solver.dt;
        for (const auto& [a, b] : d.spectrum_windows) {
            if ((b - a) / dt + 1.0 < 1024.0 - 1e-9) {
                throw ConfigError("diagnostics.spectrum_windows: each window needs at least 1024 samples");
            }
            if (b - a < 20.0 * 2.0 * std::numbers::pi / c.m - 1e-9) {
                throw ConfigError("diagnostics.spectrum_windows: each window must span 20 periods 2 pi/m");
            }
        }
        if (!d.spectrum_windows.empty() && std::numbers::pi / dt < 4.0 * c.m) {
            throw ConfigError("solver.dt too coarse for spectra: need pi/dt >= 4m");
        }
    }

    if (j.contains("verification")) {
        const auto& vj = j.at("verification");
        const std::string w = "verification";
        check_keys(vj, {"transform", "limit", "bessel", "derivative", "envelope", "cone", "horizon", "frequencies"},
                   w);
        auto& v = c.verification;
        v.transform = get_number(vj, "transform", v.transform, w);
        v.limit = get_number(vj, "limit", v.limit, w);
        v.bessel = get_number(vj, "bessel", v.bessel, w);
        v.derivative = get_number(vj, "derivative", v.derivative, w);
        v.envelope = get_number(vj, "envelope", v.envelope, w);
        v.cone = get_number(vj, "cone", v.cone, w);
        v.horizon = get_number(vj, "horizon", v.horizon, w);
        v.frequencies = get_int(vj, "frequencies", v.frequencies, w);
        if (!(v.horizon > 100.0)) throw ConfigError("verification.horizon must exceed 100");
        if (v.frequencies < 2) throw ConfigError("verification.frequencies must be >= 2");
    }

    if (j.contains("scan")) {
        const auto& sj = j.at("scan");
        check_keys(sj, {"omega_points", "edge"}, "scan");
        c.scan.omega_points = get_int(sj, "omega_points", c.scan.omega_points, "scan");
        c.scan.edge = get_number(sj, "edge", c.scan.edge, "scan");
        if (c.scan.omega_points < 2) throw ConfigError("scan.omega_points must be >= 2");
        if (!(c.scan.edge > 0.0 && c.scan.edge < 1.0)) throw ConfigError("scan.edge must be in (0, 1)");
    }

    if (j.contains("output")) {
        const auto& oj = j.at("output");
        check_keys(oj, {"directory", "formats"}, "output");
        c.output.directory = get_string(oj, "directory", c.output.directory, "output");
        if (oj.contains("formats")) {
            const auto& f = oj.at("formats");
            if (!f.is_array()) throw ConfigError("output.formats must be an array");
            c.output.formats.clear();
            for (const auto& x : f) {
                if (!x.is_string() || (x.get<std::string>() != "csv" && x.get<std::string>() != "json")) {
                    throw ConfigError("output.formats entries must be 'csv' or 'json'");
                }
                c.output.formats.push_back(x.get<std::string>());
            }
        }
    }

    // Data-level invariants: roots exist, domain condition.
    try {
        const RadialState s = build_state(c);
        s.check_domain(c.potential_model());
    } catch (const InputError& e) {
        throw ConfigError(std::string("initial_data: ") + e.what());
    } catch (const DomainError& e) {
        throw ConfigError(std::string("initial_data: ") + e.what());
    }
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config " + path + " is not valid JSON: " + e.what());
    }
    return parse_config(j);
}

json to_json(const RunConfig& c) {
    json j;
    j["schema_version"] = c.schema_version;
    j["model"] = {{"m", c.m}, {"potential", c.potential}};
    j["initial_data"] = initial_json(c.initial);
    j["solver"] = {{"dt", c.solver.dt},
                   {"T", c.solver.T},
                   {"conv_mode", mode_name(c.solver.conv_mode)},
                   {"blowup_threshold", c.solver.blowup_threshold},
                   {"corrector_tol", c.solver.corrector_tol},
                   {"corrector_max_iter", c.solver.corrector_max_iter}};
    j["grid"] = {{"dr", c.grid.dr}, {"R_out", c.grid.R_out}};
    json windows = json::array();
    for (const auto& [a, b] : c.diagnostics.spectrum_windows) windows.push_back({a, b});
    j["diagnostics"] = {{"attraction_times", c.diagnostics.attraction_times},
                        {"energy_times", c.diagnostics.energy_times},
                        {"field_times", c.diagnostics.field_times},
                        {"spectrum_windows", windows},
                        {"taper", to_string(c.diagnostics.taper)},
                        {"R_max", c.diagnostics.R_max},
                        {"attraction_dr", c.diagnostics.attraction_dr},
                        {"delta", c.diagnostics.delta}};
    const auto& v = c.verification;
    j["verification"] = {{"transform", v.transform}, {"limit", v.limit},       {"bessel", v.bessel},
                         {"derivative", v.derivative}, {"envelope", v.envelope}, {"cone", v.cone},
                         {"horizon", v.horizon},       {"frequencies", v.frequencies}};
    j["scan"] = {{"omega_points", c.scan.omega_points}, {"edge", c.scan.edge}};
    j["output"] = {{"directory", c.output.directory}, {"formats", c.output.formats}};
    return j;
}

std::string config_hash(const RunConfig& cfg) {
    const std::string text = to_json(cfg).dump();
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

SolitaryWave preset_wave(const RunConfig& cfg) {
    const Mass m = cfg.mass();
    const auto roots = solve_amplitudes(cfg.potential_model(), cfg.initial.omega, m);
    if (roots.empty()) {
        throw InputError("no solitary wave amplitude at omega = " + std::to_string(cfg.initial.omega));
    }
    const int idx = cfg.initial.root_index;
    if (idx < -1 || idx >= static_cast<int>(roots.size())) {
        throw InputError("root_index " + std::to_string(idx) + " out of range (" + std::to_string(roots.size()) +
                         " roots)");
    }
    const double q = idx == -1 ? roots.back() : roots[static_cast<std::size_t>(idx)];
    return {cfg.initial.omega, q, cfg.initial.theta};
}

RadialState build_state(const RunConfig& cfg) {
    const Mass m = cfg.mass();
    const auto& in = cfg.initial;
    if (in.preset == "zero") return {};
    if (in.preset == "green") {
        RadialState s;
        s.zeta0 = in.zeta0;
        s.eta0 = in.eta0;
        return s;
    }
    if (in.preset == "custom") {
        RadialState s;
        s.psi_reg = in.psi_reg;
        s.pi_reg = in.pi_reg;
        s.zeta0 = in.zeta0;
        s.eta0 = in.eta0;
        return s;
    }
    const SolitaryWave w = preset_wave(cfg);
    RadialState s = soliton_state(w.omega, w.q, w.theta, m);
    if (in.preset == "perturbed_soliton" && in.perturbation.relative_size > 0.0) {
        const double g = std::sqrt((m - w.omega) * (m + w.omega));
        const double reference = w.q / std::sqrt(8.0 * std::numbers::pi * g);
        const double norm = shape_l2(in.perturbation.shape);
        if (!(norm > 0.0)) throw InputError("perturbation shape has zero norm");
        const cplx coef = in.perturbation.relative_size * reference / norm;
        auto& target = in.perturbation.component == "psi" ? s.psi_reg : s.pi_reg;
        target.terms.push_back({coef, in.perturbation.shape});
    }
    return s;
}

}  // namespace pointkg
