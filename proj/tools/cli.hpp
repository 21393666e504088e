#pragma once

// Command-line front end. Kept in a header so tests can drive it in-process.

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "lcs/bgcs.hpp"
#include "lcs/fock.hpp"
#include "lcs/quantize.hpp"
#include "lcs/resolution.hpp"
#include "lcs/thermo.hpp"
#include "lcs/verify.hpp"

namespace lcs::cli {

using Json = nlohmann::ordered_json;

enum ExitCode { kOk = 0, kCheckFailed = 1, kUsage = 2 };

struct RunConfig {
    double hbar = 1.0;
    double mass = 1.0;
    double omega0 = 1.0;
    double omega_c = 1.0;
    std::optional<double> beta;
    std::optional<double> gap;
    std::optional<double> area;
    int m = 0;
    std::string depth = "auto";
    std::string z = "0,0";
    std::string z2 = "0,0";
    int n0 = 0;
    double t = 0.0;
    std::optional<double> rate;
    std::optional<double> grid_radius;
    std::optional<int> grid_panels;
    std::optional<int> grid_angular;
    std::optional<double> tol;
    std::string format = "json";
    std::string out;
    std::string symbol = "z";
    std::string suite = "all";
    int n_check = 8;
    double beta_min = 0.5;
    double beta_max = 5.0;
    int beta_steps = 10;
    std::vector<int> m_list{0};
    int workers = 0;

    PhysicalParams params() const { return PhysicalParams(hbar, mass, omega0, omega_c, beta, area); }

    int worker_count() const {
        if (workers > 0)
            return workers;
        return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    }

    GridOptions grid(GridOptions base = {}) const {
        if (grid_radius)
            base.radius = *grid_radius;
        if (grid_panels) {
            if (*grid_panels < 1)
                throw UsageError("--grid-panels must be positive");
            base.radius = *grid_panels * base.panel_width;
        }
        if (grid_angular)
            base.n_angular = *grid_angular;
        return base;
    }

    std::optional<int> fixed_depth() const {
        if (depth == "auto")
            return std::nullopt;
        int d = 0;
        const auto res = std::from_chars(depth.data(), depth.data() + depth.size(), d);
        if (res.ec != std::errc() || res.ptr != depth.data() + depth.size())
            throw UsageError("--depth must be an integer or 'auto'");
        return d;
    }
};

inline CoherentLabel parse_label(const std::string& text, const char* flag) {
    auto number = [&](std::string_view part) {
        while (!part.empty() && part.front() == ' ')
            part.remove_prefix(1);
        while (!part.empty() && part.back() == ' ')
            part.remove_suffix(1);
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
        if (part.empty() || ec != std::errc() || ptr != part.data() + part.size())
            throw UsageError(std::string(flag) + " expects \"re,im\", got '" + text + "'");
        return v;
    };
    const std::string_view all(text);
    const auto comma = all.find(',');
    if (comma == std::string_view::npos)
        return CoherentLabel(number(all), 0.0);
    return CoherentLabel(number(all.substr(0, comma)), number(all.substr(comma + 1)));
}

// ---------------------------------------------------------------------------
// Output

/// Shortest form is not used on purpose: every double carries 17 significant
/// digits so repeated runs are byte-identical and round-trip exactly.
inline std::string format_double(double v) {
    if (!std::isfinite(v))
        return "null";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

inline void write_json(std::ostream& os, const Json& j, int indent = 0) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    const std::string inner(static_cast<std::size_t>(indent + 2), ' ');
    switch (j.type()) {
    case Json::value_t::object: {
        if (j.empty()) {
            os << "{}";
            return;
        }
        os << "{\n";
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first)
                os << ",\n";
            first = false;
            os << inner << Json(it.key()).dump() << ": ";
            write_json(os, it.value(), indent + 2);
        }
        os << "\n" << pad << "}";
        return;
    }
    case Json::value_t::array: {
        if (j.empty()) {
            os << "[]";
            return;
        }
        const bool flat = std::none_of(j.begin(), j.end(), [](const Json& e) { return e.is_structured(); });
        if (flat) {
            os << "[";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i)
                    os << ", ";
                write_json(os, j[i], indent + 2);
            }
            os << "]";
            return;
        }
        os << "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i)
                os << ",\n";
            os << inner;
            write_json(os, j[i], indent + 2);
        }
        os << "\n" << pad << "]";
        return;
    }
    case Json::value_t::number_float:
        os << format_double(j.get<double>());
        return;
    default:
        os << j.dump();
    }
}

inline Json number_or_null(std::optional<double> v) {
    if (!v || !std::isfinite(*v))
        return nullptr;
    return *v;
}

inline Json complex_json(complex c) { return Json{{"re", c.real()}, {"im", c.imag()}}; }

inline Json matrix_json(const OperatorMatrix& a) {
    Json rows = Json::array();
    for (int r = 0; r < a.dim(); ++r) {
        Json row = Json::array();
        for (int c = 0; c < a.dim(); ++c)
            row.push_back(Json::array({a(r, c).real(), a(r, c).imag()}));
        rows.push_back(row);
    }
    return rows;
}

inline std::string csv_header() { return "beta,m,Z,N_mean,N2_mean,g,W_quad,W_approx,Q2,P2"; }

inline std::string csv_row(const ThermalRow& r) {
    std::string line = format_double(r.beta) + "," + std::to_string(r.m);
    for (double v : {r.z, r.n_mean, r.n2_mean, r.g, r.w_quad, r.w_approx, r.q2, r.p2})
        line += "," + format_double(v);
    return line;
}

// ---------------------------------------------------------------------------
// Commands

inline Json cmd_stats(const RunConfig& cfg) {
    const auto label = parse_label(cfg.z, "--z");
    const int m = cfg.m;
    auto guarded = [](auto&& f) -> std::optional<double> {
        try {
            return f();
        } catch (const DomainError&) {
            return std::nullopt;
        }
    };
    const auto d = dispersions(label, m);
    Json j;
    j["m"] = m;
    j["z"] = complex_json(label.z());
    j["rho"] = label.rho();
    j["phi"] = label.phi();
    j["mean_k3"] = mean_k3(label, m);
    j["mean_k3_sq"] = mean_k3_sq(label, m);
    j["mean_n"] = mean_n(label, m);
    j["mean_n_sq"] = mean_n_sq(label, m);
    j["g2"] = g2(label, m);
    j["mandel_q"] = number_or_null(guarded([&] { return mandel_q(label, m); }));
    j["fano"] = number_or_null(guarded([&] { return fano(label, m); }));
    j["snr_q"] = snr(label, m, true);
    j["snr_p"] = snr(label, m, false);
    j["dispersions"] = Json{{"dq2", d.dq2}, {"dp2", d.dp2}, {"product", d.product}};
    return j;
}

inline Json cmd_overlap(const RunConfig& cfg) {
    const auto z = parse_label(cfg.z, "--z");
    const auto zp = parse_label(cfg.z2, "--z2");
    const complex k = overlap(zp, z, cfg.m);
    Json j;
    j["m"] = cfg.m;
    j["z"] = complex_json(z.z());
    j["z2"] = complex_json(zp.z());
    j["overlap"] = complex_json(k);
    j["abs"] = std::abs(k);
    j["abs_sq"] = std::norm(k);
    return j;
}

inline Json cmd_evolve(const RunConfig& cfg) {
    const auto p = cfg.params();
    const auto z0 = parse_label(cfg.z, "--z");
    const auto point = parse_label(cfg.z2, "--z2");
    const auto zt = evolve_label(z0, cfg.t, p, cfg.rate);
    Json j;
    j["m"] = cfg.m;
    j["t"] = cfg.t;
    j["rate"] = cfg.rate ? *cfg.rate : p.omega_minus();
    j["z0"] = complex_json(z0.z());
    j["z_t"] = complex_json(zt.z());
    j["point"] = complex_json(point.z());
    j["density"] = evolved_density(point, z0, cfg.t, cfg.m, p, cfg.rate);
    j["density_bessel_form"] = evolved_density_bessel_form(point, z0, cfg.t, cfg.m, p, cfg.rate);
    return j;
}

inline Json cmd_identity(const RunConfig& cfg) {
    const int n_check = cfg.n_check;
    const auto grid = identity_grid(cfg.m, n_check, cfg.grid());
    const double res = resolution_of_identity_check({cfg.m, std::max(8, n_check + 2)}, n_check, grid,
                                                    cfg.worker_count());
    Json moments = Json::array();
    for (int n = cfg.m; n <= std::max(cfg.m, 20); ++n) {
        const auto g = measure_grid(2 * n - cfg.m + 1, 0, 0.0, cfg.grid());
        moments.push_back(Json{{"n", n}, {"rel_err", radial_moment_check(n, cfg.m, g)}});
    }
    Json j;
    j["m"] = cfg.m;
    j["n_check"] = n_check;
    j["grid"] = Json{{"R", grid.radius()}, {"radial_nodes", grid.radial_nodes().size()}, {"n_angular", grid.n_angular()}};
    j["max_deviation"] = res;
    j["radial_moments"] = moments;
    return j;
}

inline Json cmd_quantize(const RunConfig& cfg) {
    const auto sym = SymbolSpec::named(parse_symbol_tag(cfg.symbol));
    const SubspaceSpec spec{cfg.m, cfg.fixed_depth().value_or(16)};
    const auto closed = quantize_closed_form(sym, spec);
    const auto grid = quantization_grid(sym, spec, cfg.grid());
    const auto quad = quantize_by_quadrature(sym, spec, grid, cfg.worker_count());
    Json j;
    j["symbol"] = std::string(to_string(sym.tag()));
    j["m"] = spec.m;
    j["depth"] = spec.depth;
    j["band"] = closed.band();
    j["interior_block"] = interior_block(spec, sym.degree());
    j["quadrature_max_abs_diff"] = max_abs_diff(quad, closed, interior_block(spec, sym.degree()));
    j["matrix"] = matrix_json(closed);
    return j;
}

inline Json cmd_commutators(const RunConfig& cfg) {
    const SubspaceSpec spec{cfg.m, cfg.fixed_depth().value_or(16)};
    const auto rep = energy_commutators(spec);
    Json checks = Json::array();
    for (const auto& c : rep.checks)
        checks.push_back(Json{{"name", c.name}, {"max_abs_error", c.max_abs_error}});
    const auto dec = energy_operator_decomposition_check(spec);
    auto entries = [](const std::vector<MatrixEntry>& list) {
        Json a = Json::array();
        for (const auto& e : list)
            a.push_back(Json{{"row", e.row}, {"col", e.col}, {"value", complex_json(e.value)}, {"interior", e.interior}});
        return a;
    };
    Json j;
    j["m"] = spec.m;
    j["depth"] = spec.depth;
    j["interior_block"] = rep.interior;
    j["commutators"] = checks;
    j["decomposition"] = Json{{"abs_z_sq_residual", dec.abs_z_sq_residual},
                              {"delta_q", entries(dec.delta_q)},
                              {"delta_p", entries(dec.delta_p)},
                              {"boundary_supported", dec.boundary_supported},
                              {"claimed_boundary_terms", entries(dec.claimed_q)},
                              {"matches_claim", dec.matches_claim},
                              {"sum_consistency", dec.sum_consistency}};
    return j;
}

inline ThermalSpec thermal_spec(const RunConfig& cfg, int m) {
    const auto p = cfg.params();
    if (!p.beta())
        throw UsageError("thermal commands need --beta");
    return ThermalSpec(p, m, cfg.n0, cfg.gap);
}

inline Json cmd_thermal(const RunConfig& cfg) {
    const auto ts = thermal_spec(cfg, cfg.m);
    const auto label = parse_label(cfg.z, "--z");
    const int workers = cfg.worker_count();
    const auto base = cfg.grid(thermal_grid_defaults());
    const auto pg = p_grid(ts, 2 * 3 + cfg.m + 1, base);
    const auto hg = husimi_grid(ts, base);
    const auto pops = populations_from_p(ts, 3, pg, workers);
    const auto q3 = thermal_q_sq_three_way(ts, pg, cfg.tol.value_or(1e-5), workers);
    const double n = thermal_average(ThermalObservable::n, ts, pg, workers);
    const double n2 = thermal_average(ThermalObservable::n_sq, ts, pg, workers);
    Json pj = Json::array();
    for (int v = 0; v <= 3; ++v)
        pj.push_back(Json{{"v", v}, {"quadrature", pops[static_cast<std::size_t>(v)]}, {"geometric", population(ts, v)}});
    std::optional<double> pz;
    if (label.rho() > 0.0)
        pz = p_function(label, ts);
    Json j;
    j["m"] = cfg.m;
    j["beta"] = ts.beta();
    j["n0"] = ts.n0();
    j["gap_energy"] = ts.gap_energy();
    j["beta_gap"] = ts.beta_gap();
    j["Z"] = Json{{"closed", partition_function(ts)},
                  {"direct", partition_function_direct(ts)},
                  {"hypergeometric", partition_function_hypergeometric(ts)},
                  {"ln_closed", ln_partition_function(ts)}};
    j["z"] = complex_json(label.z());
    j["husimi"] = husimi_thermal(label, ts);
    j["p_function"] = number_or_null(pz);
    j["husimi_normalization"] = husimi_normalization(ts, hg, workers);
    j["p_normalization"] = p_normalization(ts, pg, workers);
    j["N_mean"] = Json{{"quadrature", n}, {"closed", thermal_mean_n(ts)}};
    j["N2_mean"] = Json{{"quadrature", n2}, {"closed", thermal_mean_n_sq(ts)}};
    j["g"] = (n2 - n) / (n * n);
    j["Q_mean"] = thermal_average(ThermalObservable::q, ts, pg, workers);
    j["populations"] = pj;
    j["Q2"] = Json{{"closed_2f1", q3.closed_2f1},
                   {"p_quadrature", q3.p_quadrature},
                   {"fock_trace", q3.fock_trace},
                   {"rel_2f1_vs_quadrature", q3.rel_2f1_vs_quadrature},
                   {"rel_2f1_vs_trace", q3.rel_2f1_vs_trace},
                   {"rel_quadrature_vs_trace", q3.rel_quadrature_vs_trace},
                   {"closed_form_flagged", q3.closed_form_flagged}};
    j["P2"] = thermal_average(ThermalObservable::p_sq, ts, pg, workers);
    return j;
}

inline Json cmd_wehrl(const RunConfig& cfg) {
    const auto ts = thermal_spec(cfg, cfg.m);
    const auto w = wehrl_entropy(ts, husimi_grid(ts, cfg.grid(thermal_grid_defaults())), cfg.worker_count());
    Json j;
    j["m"] = cfg.m;
    j["beta"] = ts.beta();
    j["beta_gap"] = ts.beta_gap();
    j["W_quad"] = w.quadrature;
    j["W_approx"] = w.approximation;
    j["rel_deviation"] = std::abs(w.quadrature - w.approximation) / std::abs(w.approximation);
    j["W_scaled"] = number_or_null(w.scaled);
    j["W_scaled_approx"] = number_or_null(w.scaled_approximation);
    j["W_strong_field_approx"] = number_or_null(w.strong_field);
    return j;
}

inline std::vector<ThermalRow> cmd_sweep(const RunConfig& cfg) {
    if (cfg.beta_steps < 1)
        throw UsageError("--beta-steps must be at least 1");
    if (!(cfg.beta_min > 0.0) || cfg.beta_max < cfg.beta_min)
        throw UsageError("sweep needs 0 < beta-min <= beta-max");
    std::vector<ThermalRow> rows;
    for (int m : cfg.m_list) {
        for (int i = 0; i < cfg.beta_steps; ++i) {
            const double beta = cfg.beta_steps == 1
                                    ? cfg.beta_min
                                    : cfg.beta_min + (cfg.beta_max - cfg.beta_min) * i / (cfg.beta_steps - 1);
            RunConfig row_cfg = cfg;
            row_cfg.beta = beta;
            try {
                rows.push_back(thermal_row(thermal_spec(row_cfg, m), cfg.grid(thermal_grid_defaults()),
                                           cfg.worker_count()));
            } catch (const Error& e) {
                throw DomainError("sweep row beta = " + format_double(beta) + ", m = " + std::to_string(m) + ": " +
                                  e.what());
            }
        }
    }
    return rows;
}

inline Json sweep_json(const std::vector<ThermalRow>& rows) {
    Json a = Json::array();
    for (const auto& r : rows)
        a.push_back(Json{{"beta", r.beta}, {"m", r.m}, {"Z", r.z}, {"N_mean", r.n_mean}, {"N2_mean", r.n2_mean},
                         {"g", r.g}, {"W_quad", r.w_quad}, {"W_approx", r.w_approx}, {"Q2", r.q2}, {"P2", r.p2}});
    return a;
}

inline Json report_json(const verify::Report& rep) {
    Json checks = Json::array();
    for (const auto& c : rep.checks)
        checks.push_back(Json{{"suite", c.suite},
                              {"name", c.name},
                              {"residual", c.residual},
                              {"tolerance", c.tolerance},
                              {"passed", c.passed},
                              {"gating", c.gating}});
    return Json{{"passed", rep.passed()}, {"checks", checks}};
}

// ---------------------------------------------------------------------------
// Entry point

/// Reads "key = value" lines ('#' starts a comment) into "--key value"
/// arguments. Underscores in keys are accepted for dashes.
inline std::vector<std::string> config_arguments(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot open config file '" + path + "'");
    std::vector<std::string> args;
    std::string line;
    int lineno = 0;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line.substr(0, line.find('#')));
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
            value = value.substr(1, value.size() - 2);
        std::replace(key.begin(), key.end(), '_', '-');
        if (key == "config")
            throw UsageError(path + ":" + std::to_string(lineno) + ": nested config files are not supported");
        args.push_back("--" + key);
        args.push_back(value);
    }
    return args;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Barut-Girardello coherent states on Landau levels: statistics, quantization, thermodynamics"};
    app.name("lcs");
    app.fallthrough();
    app.require_subcommand(1);

    auto take_last = [](CLI::Option* o) { return o->multi_option_policy(CLI::MultiOptionPolicy::TakeLast); };
    std::string config_path;
    app.add_option("--config", config_path, "flat 'key = value' file; flags override it");
    take_last(app.add_option("--m", cfg.m, "subspace index m >= 0"));
    take_last(app.add_option("--depth", cfg.depth, "truncation depth K or 'auto'"));
    take_last(app.add_option("--z", cfg.z, "label \"re,im\""));
    take_last(app.add_option("--z2", cfg.z2, "second label \"re,im\" (overlap partner, evolve point)"));
    take_last(app.add_option("--beta", cfg.beta, "inverse temperature"));
    take_last(app.add_option("--omega0", cfg.omega0, "confinement frequency"));
    take_last(app.add_option("--omega-c", cfg.omega_c, "cyclotron frequency"));
    take_last(app.add_option("--hbar", cfg.hbar));
    take_last(app.add_option("--mass", cfg.mass));
    take_last(app.add_option("--n0", cfg.n0, "fixed Landau index in E_{n0,v}"));
    take_last(app.add_option("--gap", cfg.gap, "override the ladder gap hbar (Omega - omega_c)/2"));
    take_last(app.add_option("--area", cfg.area, "area A for the scaled Wehrl entropy"));
    take_last(app.add_option("--t", cfg.t, "time for evolve"));
    take_last(app.add_option("--rate", cfg.rate, "label rotation rate (default (Omega - omega_c)/2)"));
    take_last(app.add_option("--grid-R", cfg.grid_radius, "radial cutoff R"));
    take_last(app.add_option("--grid-panels", cfg.grid_panels, "number of radial panels (sets R)"));
    take_last(app.add_option("--grid-angular", cfg.grid_angular, "angular samples"));
    take_last(app.add_option("--tol", cfg.tol, "tolerance for flagged comparisons"));
    take_last(app.add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"})));
    take_last(app.add_option("--out", cfg.out, "output path (default stdout)"));
    take_last(app.add_option("--symbol", cfg.symbol, "symbol for quantize"));
    take_last(app.add_option("--suite", cfg.suite, "suite for verify"));
    take_last(app.add_option("--n-check", cfg.n_check, "block size for identity"));
    take_last(app.add_option("--beta-min", cfg.beta_min));
    take_last(app.add_option("--beta-max", cfg.beta_max));
    take_last(app.add_option("--beta-steps", cfg.beta_steps));
    take_last(app.add_option("--m-list", cfg.m_list, "comma separated m values for sweep")->delimiter(','));
    take_last(app.add_option("--workers", cfg.workers, "quadrature threads (0 = hardware)"));

    const char* names[] = {"stats", "overlap", "evolve", "identity", "quantize",
                           "commutators", "thermal", "wehrl", "sweep", "verify"};
    for (const char* name : names)
        app.add_subcommand(name);

    std::vector<std::string> args;
    try {
        std::vector<std::string> raw(argv + 1, argv + argc);
        for (std::size_t i = 0; i < raw.size(); ++i) {
            if (raw[i] == "--config" && i + 1 < raw.size())
                config_path = raw[i + 1];
            else if (raw[i].rfind("--config=", 0) == 0)
                config_path = raw[i].substr(9);
        }
        if (!config_path.empty())
            args = config_arguments(config_path);
        args.insert(args.end(), raw.begin(), raw.end());
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }

    std::string command;
    for (const char* name : names)
        if (app.got_subcommand(name))
            command = name;

    std::ofstream file;
    std::ostream* sink = &out;
    if (!cfg.out.empty()) {
        file.open(cfg.out);
        if (!file) {
            err << "error: cannot open output file '" << cfg.out << "'\n";
            return kUsage;
        }
        sink = &file;
    }

    try {
        if (cfg.m < 0)
            throw DomainError("--m must be non-negative");
        (void)cfg.params();
        if (cfg.format == "csv" && command != "sweep")
            throw UsageError("--format csv is only available for sweep");

        Json result;
        int status = kOk;
        if (command == "stats") result = cmd_stats(cfg);
        else if (command == "overlap") result = cmd_overlap(cfg);
        else if (command == "evolve") result = cmd_evolve(cfg);
        else if (command == "identity") result = cmd_identity(cfg);
        else if (command == "quantize") result = cmd_quantize(cfg);
        else if (command == "commutators") result = cmd_commutators(cfg);
        else if (command == "thermal") result = cmd_thermal(cfg);
        else if (command == "wehrl") result = cmd_wehrl(cfg);
        else if (command == "sweep") {
            const auto rows = cmd_sweep(cfg);
            if (cfg.format == "csv") {
                *sink << csv_header() << "\n";
                for (const auto& r : rows)
                    *sink << csv_row(r) << "\n";
                return kOk;
            }
            result = sweep_json(rows);
        } else if (command == "verify") {
            verify::SuiteConfig sc;
            sc.m = cfg.m;
            sc.params = cfg.params();
            sc.n0 = cfg.n0;
            sc.gap = cfg.gap;
            sc.grid = cfg.grid();
            sc.workers = cfg.worker_count();
            const auto rep = verify::run(verify::parse_suite(cfg.suite), sc);
            result = report_json(rep);
            for (const auto& c : rep.checks)
                if (!c.passed)
                    err << (c.gating ? "FAIL " : "note ") << "[" << c.suite << "] " << c.name << ": residual "
                        << format_double(c.residual) << " vs tolerance " << format_double(c.tolerance) << "\n";
            status = rep.passed() ? kOk : kCheckFailed;
        }
        write_json(*sink, result);
        *sink << "\n";
        return status;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
}

} // namespace lcs::cli
