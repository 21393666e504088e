#pragma once

// Invariant suites: each check records the measured residual next to its
// tolerance. Informational entries are reported but never fail a suite.

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lcs/bgcs.hpp"
#include "lcs/fock.hpp"
#include "lcs/measure.hpp"
#include "lcs/quantize.hpp"
#include "lcs/resolution.hpp"
#include "lcs/specfun.hpp"
#include "lcs/thermo.hpp"

namespace lcs::verify {

struct Check {
    std::string suite;
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    bool gating = true;
};

struct Report {
    std::vector<Check> checks;

    bool passed() const {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed || !c.gating; });
    }

    /// Records residual <= tol. Non-finite residuals fail.
    void expect_below(const std::string& suite, const std::string& name, double residual, double tol) {
        checks.push_back({suite, name, residual, tol, std::isfinite(residual) && residual <= tol, true});
    }

    void info(const std::string& suite, const std::string& name, double value, double tol, bool ok) {
        checks.push_back({suite, name, value, tol, ok, false});
    }
};

struct SuiteConfig {
    int m = 0;
    PhysicalParams params{1.0, 1.0, 1.0, 1.0};
    int n0 = 0;
    std::optional<double> gap;
    GridOptions grid;
    int workers = 1;
};

inline double rel_err(double value, double target) { return std::abs(value - target) / std::abs(target); }

inline void run_specfun(Report& rep) {
    const std::string s = "specfun";
    double wr = 0.0;
    for (int m = 0; m <= 8; ++m)
        for (int i = 0; i < 20; ++i) {
            const double x = 1e-2 * std::pow(5000.0, i / 19.0);
            const double lhs = specfun::bessel_i(m, x) * specfun::bessel_k(m + 1, x) +
                               specfun::bessel_i(m + 1, x) * specfun::bessel_k(m, x);
            wr = std::max(wr, rel_err(lhs, 1.0 / x));
        }
    rep.expect_below(s, "Wronskian I_m K_{m+1} + I_{m+1} K_m = 1/x", wr, 1e-12);

    double hr = 0.0;
    for (double x : {0.1, 0.4, 0.8})
        hr = std::max(hr, rel_err(specfun::gauss_2f1(3.0, 1.0, 3.0, x), std::pow(1.0 - x, -1.0)));
    rep.expect_below(s, "2F1(c, mu; c; x) = (1 - x)^-mu", hr, 1e-12);

    double rr = 0.0;
    for (int m = 1; m <= 8; ++m)
        for (double x : {0.5 * m, 1.0 * m, 5.0 + m, 30.0}) {
            const double lhs = specfun::bessel_i(m - 1, x) - specfun::bessel_i(m + 1, x);
            rr = std::max(rr, rel_err(lhs, 2.0 * m / x * specfun::bessel_i(m, x)));
        }
    rep.expect_below(s, "recurrence I_{m-1} - I_{m+1} = (2m/x) I_m", rr, 1e-10);

    double cr = 0.0;
    for (complex w : {complex(1.0, 2.0), complex(-3.0, 0.5), complex(10.0, -7.0)})
        cr = std::max(cr, std::abs(specfun::bessel_i(3, std::conj(w)) - std::conj(specfun::bessel_i(3, w))) /
                              std::abs(specfun::bessel_i(3, w)));
    rep.expect_below(s, "I_m(conj w) = conj I_m(w)", cr, 1e-14);
}

inline void run_identity(Report& rep, const SuiteConfig& cfg) {
    const std::string s = "identity";
    const int m = cfg.m;
    const int n_check = 8;
    const auto grid = identity_grid(m, n_check, cfg.grid);
    rep.expect_below(s, "resolution of identity, m = " + std::to_string(m),
                     resolution_of_identity_check({m, n_check + 2}, n_check, grid, cfg.workers), 1e-6);

    double mr = 0.0;
    for (int n = m; n <= std::max(m, 20); ++n) {
        const auto g = measure_grid(2 * n - m + 1, 0, 0.0, cfg.grid);
        mr = std::max(mr, radial_moment_check(n, m, g));
    }
    rep.expect_below(s, "radial moment identity, n <= 20", mr, 1e-8);

    double nr = 0.0;
    double er = 0.0;
    for (double rho : {1e-3, 0.5, 2.0, 10.0, 50.0}) {
        const auto label = CoherentLabel::polar(rho, 0.9);
        const auto state = bgcs_state(label, m);
        nr = std::max(nr, std::abs(state.norm_sq() - 1.0));
        const auto km = ladder_matrix(LadderKind::k_minus, {m, state.depth()}).apply(state.amplitudes());
        double num = 0.0;
        double den = 0.0;
        for (int v = 0; v < state.depth(); ++v) {
            num += std::norm(km[static_cast<std::size_t>(v)] - label.z() * state[v]);
            den += std::norm(state[v]);
        }
        er = std::max(er, std::sqrt(num / den));
    }
    rep.expect_below(s, "BGCS normalization", nr, 1e-12);
    rep.expect_below(s, "BGCS eigenproperty K_- v = z v", er, 1e-10);
}

inline void run_kernel(Report& rep, const SuiteConfig& cfg) {
    const std::string s = "kernel";
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> radius(0.0, 3.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    const auto grid = kernel_grid(3.0, cfg.grid);
    double worst = 0.0;
    double herm = 0.0;
    for (int i = 0; i < 5; ++i) {
        const auto z = CoherentLabel::polar(radius(rng), angle(rng));
        const auto zp = CoherentLabel::polar(radius(rng), angle(rng));
        worst = std::max(worst, kernel_idempotence_check(z, zp, cfg.m, grid, cfg.workers));
        herm = std::max(herm, std::abs(overlap(zp, z, cfg.m) - std::conj(overlap(z, zp, cfg.m))));
    }
    rep.expect_below(s, "kernel idempotence (5 random pairs, |z| <= 3)", worst, 1e-6);
    rep.expect_below(s, "kernel hermiticity", herm, 1e-13);
}

inline void run_quantize(Report& rep, const SuiteConfig& cfg) {
    const std::string s = "quantize";
    const SubspaceSpec spec{cfg.m, 16};
    for (auto tag : {SymbolTag::z, SymbolTag::z_bar, SymbolTag::z_sq, SymbolTag::z_bar_sq, SymbolTag::abs_z_sq,
                     SymbolTag::q, SymbolTag::p, SymbolTag::q_sq, SymbolTag::p_sq}) {
        const auto sym = SymbolSpec::named(tag);
        const auto grid = quantization_grid(sym, spec, cfg.grid);
        const auto quad = quantize_by_quadrature(sym, spec, grid, cfg.workers);
        const auto closed = quantize_closed_form(sym, spec);
        rep.expect_below(s, "quadrature vs closed form: A_" + std::string(to_string(tag)),
                         max_abs_diff(quad, closed, interior_block(spec, sym.degree())), 1e-6);
    }

    const CoherentLabel label = CoherentLabel::polar(1.2, 0.7);
    double mr = 0.0;
    for (auto tag : {SymbolTag::z, SymbolTag::z_bar, SymbolTag::z_sq, SymbolTag::abs_z_sq, SymbolTag::q,
                     SymbolTag::p, SymbolTag::q_sq, SymbolTag::p_sq}) {
        const auto sym = SymbolSpec::named(tag);
        const complex target = mean_value_closed_form(sym, label, cfg.m);
        mr = std::max(mr, std::abs(mean_values_on_bgcs(sym, label, cfg.m) - target) / std::abs(target));
    }
    rep.expect_below(s, "BGCS mean values of the quantized symbols", mr, 1e-8);

    const auto dm = dispersions_from_matrices(label, cfg.m);
    const auto dc = dispersions(label, cfg.m);
    rep.expect_below(s, "(Delta Q)^2 from matrices vs <K3>", rel_err(dm.dq2, dc.dq2), 1e-8);
    rep.expect_below(s, "(Delta P)^2 from matrices vs <K3>", rel_err(dm.dp2, dc.dp2), 1e-8);
    rep.expect_below(s, "uncertainty product at |z| = 1e-6, m = 0",
                     std::abs(dispersions(CoherentLabel(1e-6, 0.0), 0).product - 0.25), 1e-6);
}

inline void run_commutators(Report& rep, const SuiteConfig& cfg) {
    const std::string s = "commutators";
    const SubspaceSpec spec{cfg.m, 16};
    const int block = spec.dim() - 2;
    const auto kp = ladder_matrix(LadderKind::k_plus, spec);
    const auto km = ladder_matrix(LadderKind::k_minus, spec);
    const auto k3 = ladder_matrix(LadderKind::k3, spec);
    rep.expect_below(s, "[K+, K-] = -2 K3", max_abs_diff(commutator(kp, km), -2.0 * k3, block), 1e-12);
    rep.expect_below(s, "[K3, K+] = K+", max_abs_diff(commutator(k3, kp), kp, block), 1e-12);
    rep.expect_below(s, "[K3, K-] = -K-", max_abs_diff(commutator(k3, km), -1.0 * km, block), 1e-12);

    const auto er = energy_commutators(spec);
    for (const auto& c : er.checks)
        rep.expect_below(s, c.name, c.max_abs_error, 1e-12);

    const auto dec = energy_operator_decomposition_check(spec);
    rep.expect_below(s, "A_|z|^2 = (Q^2 + P^2)/2 + [A_z, A_zbar]/2", dec.abs_z_sq_residual, 1e-12);
    rep.expect_below(s, "A_q^2 - Q^2 - K3 supported on the truncation edge", dec.boundary_supported ? 0.0 : 1.0, 0.0);
    rep.info(s, "A_q^2 residual matches the stated boundary projectors", dec.matches_claim ? 0.0 : 1.0, 0.0,
             dec.matches_claim);
}

inline void run_thermo(Report& rep, const SuiteConfig& cfg) {
    const std::string s = "thermo";
    const auto& p = cfg.params;
    std::vector<double> betas;
    if (p.beta()) {
        betas.push_back(*p.beta());
    } else {
        const double eps = cfg.gap ? *cfg.gap : 0.5 * p.hbar() * (p.omega() - p.omega_c());
        if (!(eps > 0.0))
            throw DomainError("thermo suite requires Omega > omega_c (omega0 > 0)");
        for (double bg : {0.5, 1.0, 3.0})
            betas.push_back(bg / eps);
    }
    auto with_beta = [&](double beta, int m) {
        return ThermalSpec(PhysicalParams(p.hbar(), p.mass(), p.omega0(), p.omega_c(), beta, p.area()), m, cfg.n0,
                           cfg.gap);
    };

    for (double beta : betas) {
        const auto ts = with_beta(beta, cfg.m);
        const std::string tag = " (beta eps = " + std::to_string(ts.beta_gap()) + ")";
        const double zc = partition_function(ts);
        rep.expect_below(s, "Z closed form vs direct sum" + tag, rel_err(partition_function_direct(ts), zc), 1e-12);
        rep.expect_below(s, "Z closed form vs hypergeometric" + tag,
                         rel_err(partition_function_hypergeometric(ts), zc), 1e-12);
        const auto hg = husimi_grid(ts, cfg.grid);
        const auto pg = p_grid(ts, 2 * 3 + cfg.m + 1, cfg.grid);
        rep.expect_below(s, "Husimi normalization" + tag, std::abs(husimi_normalization(ts, hg, cfg.workers) - 1.0),
                         1e-6);
        rep.expect_below(s, "P normalization" + tag, std::abs(p_normalization(ts, pg, cfg.workers) - 1.0), 1e-6);
        const double n = thermal_average(ThermalObservable::n, ts, pg, cfg.workers);
        const double n2 = thermal_average(ThermalObservable::n_sq, ts, pg, cfg.workers);
        rep.expect_below(s, "thermal <N> vs Bose factor" + tag, rel_err(n, thermal_mean_n(ts)), 1e-6);
        rep.expect_below(s, "thermal <N^2> vs nbar + 2 nbar^2" + tag, rel_err(n2, thermal_mean_n_sq(ts)), 1e-6);
        rep.expect_below(s, "thermal g = 2" + tag, std::abs((n2 - n) / (n * n) - 2.0), 1e-6);
        const double nq = thermal_average(ThermalObservable::q, ts, pg, cfg.workers);
        rep.expect_below(s, "thermal <Q> = 0" + tag, std::abs(nq), 1e-10);
        const auto pops = populations_from_p(ts, 3, pg, cfg.workers);
        double pr = 0.0;
        for (int v = 0; v <= 3; ++v)
            pr = std::max(pr, std::abs(pops[static_cast<std::size_t>(v)] - population(ts, v)));
        rep.expect_below(s, "P reconstruction of Fock populations" + tag, pr, 1e-6);
        const auto q3 = thermal_q_sq_three_way(ts, pg, 1e-5, cfg.workers);
        rep.expect_below(s, "<Q^2> P-quadrature vs Fock trace" + tag, q3.rel_quadrature_vs_trace, 1e-5);
        rep.info(s, "<Q^2> 2F1 closed form vs Fock trace" + tag, q3.rel_2f1_vs_trace, 1e-5, !q3.closed_form_flagged);
        const double p2 = thermal_average(ThermalObservable::p_sq, ts, pg, cfg.workers);
        rep.expect_below(s, "<P^2> = <Q^2> by quadrature" + tag, rel_err(p2, q3.p_quadrature), 1e-5);
    }

    if (cfg.m != 4) {
        const auto a = with_beta(betas.front(), cfg.m);
        const auto b = with_beta(betas.front(), 4);
        rep.expect_below(s, "thermal <N> independent of m",
                         std::abs(thermal_average(ThermalObservable::n, a, p_grid(a, 3, cfg.grid), cfg.workers) -
                                  thermal_average(ThermalObservable::n, b, p_grid(b, 3, cfg.grid), cfg.workers)),
                         1e-6);
    }

    const double eps = with_beta(1.0, 0).gap_energy();
    for (double bg : {2.0, 3.0, 4.0}) {
        const auto ts = with_beta(bg / eps, 0);
        const auto w = wehrl_entropy(ts, husimi_grid(ts, cfg.grid), cfg.workers);
        const std::string tag = " (beta eps = " + std::to_string(bg) + ", m = 0)";
        rep.expect_below(s, "W quadrature >= 0.9 W approximation" + tag,
                         std::max(0.0, 0.9 * w.approximation - w.quadrature), 0.0);
        const double dev = rel_err(w.quadrature, w.approximation);
        rep.info(s, "W quadrature within 10% of -ln(1 - e^{-beta eps})" + tag, dev, 0.1, dev <= 0.1);
    }
}

enum class Suite { specfun, identity, kernel, quantize, commutators, thermo, all };

inline Suite parse_suite(const std::string& name) {
    if (name == "specfun") return Suite::specfun;
    if (name == "identity") return Suite::identity;
    if (name == "kernel") return Suite::kernel;
    if (name == "quantize") return Suite::quantize;
    if (name == "commutators") return Suite::commutators;
    if (name == "thermo") return Suite::thermo;
    if (name == "all") return Suite::all;
    throw UsageError("unknown suite '" + name + "'");
}

inline Report run(Suite suite, const SuiteConfig& cfg) {
    Report rep;
    const bool all = suite == Suite::all;
    if (all || suite == Suite::specfun) run_specfun(rep);
    if (all || suite == Suite::identity) run_identity(rep, cfg);
    if (all || suite == Suite::kernel) run_kernel(rep, cfg);
    if (all || suite == Suite::quantize) run_quantize(rep, cfg);
    if (all || suite == Suite::commutators) run_commutators(rep, cfg);
    if (all || suite == Suite::thermo) run_thermo(rep, cfg);
    return rep;
}

} // namespace lcs::verify
