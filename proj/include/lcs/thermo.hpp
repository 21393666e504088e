#pragma once

// Canonical ensemble on h_m in the BGCS representation. The ladder gap is
// eps = hbar (Omega - omega_c)/2 unless overridden; with a = beta eps / 2 and
// x = exp(-beta eps) the Fock populations are (1 - x) x^v.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "lcs/bgcs.hpp"
#include "lcs/errors.hpp"
#include "lcs/fock.hpp"
#include "lcs/measure.hpp"
#include "lcs/quantize.hpp"
#include "lcs/specfun.hpp"

namespace lcs {

class ThermalSpec {
public:
    /// n0 is the fixed Landau index in E_{n0,v} = hbar Omega (n0 + 1/2) - eps (n0 - v);
    /// it only shifts ln Z. gap overrides eps.
    ThermalSpec(PhysicalParams params, int m, int n0 = 0, std::optional<double> gap = std::nullopt)
        : params_(params), m_(m), n0_(n0), gap_(gap) {
        params_.require_thermal();
        if (m < 0)
            throw DomainError("ThermalSpec: m must be non-negative");
        if (n0 < 0)
            throw DomainError("ThermalSpec: n0 must be non-negative");
        if (gap && !(*gap > 0.0 && std::isfinite(*gap)))
            throw DomainError("ThermalSpec: gap energy must be positive and finite");
        if (!(mean_occupation() > 0.0) || !std::isfinite(mean_occupation()))
            throw DomainError("ThermalSpec: thermal occupancy is not positive and finite");
    }

    const PhysicalParams& params() const { return params_; }
    int m() const { return m_; }
    int n0() const { return n0_; }
    double beta() const { return *params_.beta(); }

    double gap_energy() const {
        return gap_ ? *gap_ : 0.5 * params_.hbar() * (params_.omega() - params_.omega_c());
    }
    /// Omega - omega_c and Omega + omega_c as seen by the gap (equal to the
    /// physical values unless the gap is overridden).
    double omega_difference() const { return 2.0 * gap_energy() / params_.hbar(); }
    double omega_sum() const { return 2.0 * params_.omega() - omega_difference(); }

    double beta_gap() const { return beta() * gap_energy(); }
    double a() const { return 0.5 * beta_gap(); }
    double x() const { return std::exp(-beta_gap()); }
    double mean_occupation() const { return 1.0 / std::expm1(beta_gap()); }

    /// E_{n0, v}.
    double level_energy(int v) const {
        return params_.hbar() * params_.omega() * (n0_ + 0.5) - gap_energy() * (n0_ - v);
    }

private:
    PhysicalParams params_;
    int m_;
    int n0_;
    std::optional<double> gap_;
};

// ---------------------------------------------------------------------------
// Partition function

/// ln Z = -(beta hbar/2)(n0 + 1/2)(Omega + omega_c) - ln(2 sinh((beta hbar/4)(Omega - omega_c))).
inline double ln_partition_function(const ThermalSpec& ts) {
    const double bh = ts.beta() * ts.params().hbar();
    const double s = 0.25 * bh * ts.omega_difference();
    return -0.5 * bh * (ts.n0() + 0.5) * ts.omega_sum() - std::log(2.0 * std::sinh(s));
}

inline double partition_function(const ThermalSpec& ts) { return std::exp(ln_partition_function(ts)); }

/// sum_v exp(-beta E_{n0,v}), summed until the geometric tail is below 1e-17
/// of the partial sum.
inline double partition_function_direct(const ThermalSpec& ts, int max_terms = 1000000) {
    const double x = ts.x();
    specfun::CompensatedSum<double> sum;
    for (int v = 0; v < max_terms; ++v) {
        const double term = std::exp(-ts.beta() * ts.level_energy(v));
        sum.add(term);
        if (term * x / (1.0 - x) < 1e-17 * sum.value())
            return sum.value();
    }
    throw EvaluationError("partition_function_direct: sum did not converge", sum.value());
}

/// exp(-(beta hbar/2)[n0 (Omega + omega_c) + Omega]) F(m+1, 1; m+1; x).
inline double partition_function_hypergeometric(const ThermalSpec& ts) {
    const double bh = ts.beta() * ts.params().hbar();
    const double pref = std::exp(-0.5 * bh * (ts.n0() * ts.omega_sum() + ts.params().omega()));
    specfun::SeriesControl ctl;
    ctl.max_terms = 1000000;
    return pref * specfun::gauss_2f1(ts.m() + 1.0, 1.0, ts.m() + 1.0, ts.x(), ctl);
}

/// Fock populations <v|rho|v> = (1 - x) x^v.
inline double population(const ThermalSpec& ts, int v) {
    return -std::expm1(-ts.beta_gap()) * std::exp(-ts.beta_gap() * v);
}

// ---------------------------------------------------------------------------
// Husimi and P representations

/// ln <z|rho|z>_m = a m + ln(1 - x) + ln I_m(2|z| e^{-a}) - ln I_m(2|z|).
inline double ln_husimi_thermal(const CoherentLabel& label, const ThermalSpec& ts) {
    const double a = ts.a();
    const double base = a * ts.m() + std::log(-std::expm1(-2.0 * a));
    const double r = label.rho();
    if (r == 0.0)
        return base - a * ts.m();
    return base + specfun::ln_bessel_i(ts.m(), 2.0 * r * std::exp(-a)) - specfun::ln_bessel_i(ts.m(), 2.0 * r);
}

/// <z|rho|z>_m = 2 e^{a(m-1)} sinh(a) I_m(2|z| e^{-a}) / I_m(2|z|).
inline double husimi_thermal(const CoherentLabel& label, const ThermalSpec& ts) {
    return std::exp(ln_husimi_thermal(label, ts));
}

/// Strong-field form with a' = beta hbar omega0^2 / (2 omega_c):
///   e^{a'(m-1)} 2a' I_m(2|z| e^{-a'}) / I_m(2|z|).
inline double husimi_strong_field(const CoherentLabel& label, const ThermalSpec& ts) {
    const auto& p = ts.params();
    if (!(p.omega_c() > 0.0))
        throw DomainError("husimi_strong_field: requires omega_c > 0");
    const double ap = ts.beta() * p.hbar() * p.omega0() * p.omega0() / (2.0 * p.omega_c());
    const int m = ts.m();
    const double r = label.rho();
    double ln_ratio = -ap * m;
    if (r > 0.0)
        ln_ratio = specfun::ln_bessel_i(m, 2.0 * r * std::exp(-ap)) - specfun::ln_bessel_i(m, 2.0 * r);
    return std::exp(ap * (m - 1) + std::log(2.0 * ap) + ln_ratio);
}

/// ln P_m(z) = ln(e^{2a} - 1) + a m + ln K_m(2|z| e^a) - ln K_m(2|z|).
inline double ln_p_function(const CoherentLabel& label, const ThermalSpec& ts) {
    const double r = label.rho();
    if (r == 0.0)
        throw DomainError("p_function: K_m(2|z|) is singular at z = 0");
    const double a = ts.a();
    return std::log(std::expm1(2.0 * a)) + a * ts.m() + specfun::ln_bessel_k(ts.m(), 2.0 * r * std::exp(a)) -
           specfun::ln_bessel_k(ts.m(), 2.0 * r);
}

inline double p_function(const CoherentLabel& label, const ThermalSpec& ts) {
    return std::exp(ln_p_function(label, ts));
}

// ---------------------------------------------------------------------------
// Grids. Husimi-weighted integrands decay like exp(-2(1 - e^{-a}) r), P-weighted
// ones like exp(-2(e^a - 1) r). Everything here carries angular modes <= 2.

inline GridOptions thermal_grid_defaults() {
    GridOptions opt;
    opt.n_angular = 32;
    return opt;
}

inline QuadratureGrid husimi_grid(const ThermalSpec& ts, GridOptions base = thermal_grid_defaults()) {
    base.decay_rate = 2.0 * -std::expm1(-ts.a());
    return measure_grid(2, 2, 0.0, base);
}

inline QuadratureGrid p_grid(const ThermalSpec& ts, int degree = 3, GridOptions base = thermal_grid_defaults()) {
    base.decay_rate = 2.0 * std::expm1(ts.a());
    return measure_grid(degree, 2, 0.0, base);
}

inline double husimi_normalization(const ThermalSpec& ts, const QuadratureGrid& grid, int workers = 1) {
    return integrate([&](complex z) { return complex(husimi_thermal(CoherentLabel(z), ts)); }, ts.m(), grid, workers)
        .real();
}

inline double p_normalization(const ThermalSpec& ts, const QuadratureGrid& grid, int workers = 1) {
    return integrate([&](complex z) { return complex(p_function(CoherentLabel(z), ts)); }, ts.m(), grid, workers)
        .real();
}

/// <v|rho|v> = int d rho P_m(z) |<v|z>|^2 for v = 0..max_level.
inline std::vector<double> populations_from_p(const ThermalSpec& ts, int max_level, const QuadratureGrid& grid,
                                              int workers = 1) {
    const int m = ts.m();
    grid.require(2 * max_level + m + 1, 0, "populations_from_p");
    const std::size_t width = static_cast<std::size_t>(max_level) + 1;
    const int n_ang = grid.n_angular();
    const double dphi = grid.angular_weight();
    auto node = [&](double r, std::span<complex> out) {
        std::fill(out.begin(), out.end(), complex{});
        const double weight = measure_density(r, m) * dphi;
        for (int j = 0; j < n_ang; ++j) {
            const complex z = std::polar(r, grid.angle(j));
            const double pz = p_function(CoherentLabel(z), ts);
            const auto amp = bgcs_amplitudes(z, m, max_level);
            for (std::size_t v = 0; v < width; ++v)
                out[v] += pz * std::norm(amp[v]);
        }
        for (auto& x : out)
            x *= weight;
    };
    const auto raw = integrate_radial(grid, width, node, workers);
    std::vector<double> out(width);
    for (std::size_t v = 0; v < width; ++v)
        out[v] = raw[v].real();
    return out;
}

// ---------------------------------------------------------------------------
// Wehrl entropy

struct WehrlResult {
    double quadrature = 0.0;               // -int d rho h ln h
    double approximation = 0.0;            // -ln(1 - e^{-beta eps})
    std::optional<double> scaled;          // quadrature - ln(2 pi l_-^2 / A), needs the area
    std::optional<double> scaled_approximation;
    std::optional<double> strong_field;    // [s/2 - ln s] s / (2 sinh(s/2)), s = beta hbar omega0^2/omega_c
};

inline double wehrl_approximation(const ThermalSpec& ts) { return -std::log(-std::expm1(-ts.beta_gap())); }

inline std::optional<double> wehrl_strong_field(const ThermalSpec& ts) {
    const auto& p = ts.params();
    if (!(p.omega_c() > 0.0) || !(p.omega0() > 0.0))
        return std::nullopt;
    const double s = ts.beta() * p.hbar() * p.omega0() * p.omega0() / p.omega_c();
    return (0.5 * s - std::log(s)) * s / (2.0 * std::sinh(0.5 * s));
}

inline WehrlResult wehrl_entropy(const ThermalSpec& ts, const QuadratureGrid& grid, int workers = 1) {
    auto integrand = [&](complex z) {
        const double ln_h = ln_husimi_thermal(CoherentLabel(z), ts);
        const double h = std::exp(ln_h);
        return complex(h < 1e-300 ? 0.0 : h * ln_h);
    };
    WehrlResult out;
    out.quadrature = -integrate(integrand, ts.m(), grid, workers).real();
    out.approximation = wehrl_approximation(ts);
    if (const auto area = ts.params().area()) {
        const double l = ts.params().length_minus();
        const double offset = std::log(2.0 * std::numbers::pi * l * l / *area);
        out.scaled = out.quadrature - offset;
        out.scaled_approximation = out.approximation - offset;
    }
    out.strong_field = wehrl_strong_field(ts);
    return out;
}

// ---------------------------------------------------------------------------
// Thermal averages <O>_m = int d rho P_m(z) <z|O|z>_m

enum class ThermalObservable { n, n_sq, q, p, q_sq, p_sq };

/// <z|O|z>_m for the observables with BGCS closed forms.
inline double bgcs_mean(ThermalObservable obs, const CoherentLabel& label, int m) {
    const double r = label.rho();
    const double phi = label.phi();
    switch (obs) {
    case ThermalObservable::n: return mean_n(label, m);
    case ThermalObservable::n_sq: return mean_n_sq(label, m);
    case ThermalObservable::q: return std::numbers::sqrt2 * r * std::cos(phi);
    case ThermalObservable::p: return std::numbers::sqrt2 * r * std::sin(phi);
    case ThermalObservable::q_sq: {
        const double q = std::numbers::sqrt2 * r * std::cos(phi);
        return q * q + mean_k3(label, m);
    }
    case ThermalObservable::p_sq: {
        const double p = std::numbers::sqrt2 * r * std::sin(phi);
        return p * p + mean_k3(label, m);
    }
    }
    throw UsageError("bgcs_mean: unknown observable");
}

template <class F>
double thermal_average(F&& bgcs_mean_fn, const ThermalSpec& ts, const QuadratureGrid& grid, int workers = 1) {
    return integrate(
               [&](complex z) {
                   const CoherentLabel label(z);
                   return complex(p_function(label, ts) * bgcs_mean_fn(label));
               },
               ts.m(), grid, workers)
        .real();
}

inline double thermal_average(ThermalObservable obs, const ThermalSpec& ts, const QuadratureGrid& grid,
                              int workers = 1) {
    return thermal_average([&](const CoherentLabel& l) { return bgcs_mean(obs, l, ts.m()); }, ts, grid, workers);
}

inline double thermal_mean_n(const ThermalSpec& ts) { return ts.mean_occupation(); }

inline double thermal_mean_n_sq(const ThermalSpec& ts) {
    const double n = ts.mean_occupation();
    return n + 2.0 * n * n;
}

/// (1 - x) x (m+1) F(m+2, 2; m+1; x) + nbar + (m+1)/2; <P^2>_m is the same.
inline double thermal_q_sq_closed(const ThermalSpec& ts) {
    const double x = ts.x();
    const int m = ts.m();
    specfun::SeriesControl ctl;
    ctl.max_terms = 1000000;
    const double f = specfun::gauss_2f1(m + 2.0, 2.0, m + 1.0, x, ctl);
    return -std::expm1(-ts.beta_gap()) * x * f * (m + 1) + ts.mean_occupation() + 0.5 * (m + 1);
}

/// sum_v p_v <v|Q Q|v> with Q the quantized position, truncated where the
/// population tail drops below 1e-18.
inline double thermal_q_sq_fock_trace(const ThermalSpec& ts) {
    const double x = ts.x();
    int depth = 8;
    while (population(ts, depth) * (depth + ts.m() + 2.0) * (depth + 1.0) / (1.0 - x) > 1e-18)
        ++depth;
    const SubspaceSpec spec{ts.m(), depth + 1};
    const auto q = quantize_closed_form(SymbolSpec::named(SymbolTag::q), spec);
    const auto q2 = q * q;
    specfun::CompensatedSum<double> sum;
    for (int v = 0; v <= depth; ++v)
        sum.add(population(ts, v) * q2(v, v).real());
    return sum.value();
}

struct QSquaredComparison {
    double closed_2f1 = 0.0;
    double p_quadrature = 0.0;
    double fock_trace = 0.0;
    double rel_2f1_vs_quadrature = 0.0;
    double rel_2f1_vs_trace = 0.0;
    double rel_quadrature_vs_trace = 0.0;
    /// Set when the closed form differs from either numerical route by more than tol.
    bool closed_form_flagged = false;
};

inline QSquaredComparison thermal_q_sq_three_way(const ThermalSpec& ts, const QuadratureGrid& grid,
                                                 double tol = 1e-5, int workers = 1) {
    auto rel = [](double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); };
    QSquaredComparison out;
    out.closed_2f1 = thermal_q_sq_closed(ts);
    out.p_quadrature = thermal_average(ThermalObservable::q_sq, ts, grid, workers);
    out.fock_trace = thermal_q_sq_fock_trace(ts);
    out.rel_2f1_vs_quadrature = rel(out.closed_2f1, out.p_quadrature);
    out.rel_2f1_vs_trace = rel(out.closed_2f1, out.fock_trace);
    out.rel_quadrature_vs_trace = rel(out.p_quadrature, out.fock_trace);
    out.closed_form_flagged = out.rel_2f1_vs_quadrature > tol || out.rel_2f1_vs_trace > tol;
    return out;
}

// ---------------------------------------------------------------------------
// Sweep rows for tabulation

struct ThermalRow {
    double beta = 0.0;
    int m = 0;
    double z = 0.0;
    double n_mean = 0.0;
    double n2_mean = 0.0;
    double g = 0.0;
    double w_quad = 0.0;
    double w_approx = 0.0;
    double q2 = 0.0;
    double p2 = 0.0;
};

/// One sweep row: Z in closed form, thermal averages and W by quadrature.
inline ThermalRow thermal_row(const ThermalSpec& ts, GridOptions base = thermal_grid_defaults(), int workers = 1) {
    ThermalRow row;
    row.beta = ts.beta();
    row.m = ts.m();
    row.z = partition_function(ts);
    const auto pg = p_grid(ts, 3, base);
    row.n_mean = thermal_average(ThermalObservable::n, ts, pg, workers);
    row.n2_mean = thermal_average(ThermalObservable::n_sq, ts, pg, workers);
    row.g = (row.n2_mean - row.n_mean) / (row.n_mean * row.n_mean);
    row.q2 = thermal_average(ThermalObservable::q_sq, ts, pg, workers);
    row.p2 = thermal_average(ThermalObservable::p_sq, ts, pg, workers);
    const auto w = wehrl_entropy(ts, husimi_grid(ts, base), workers);
    row.w_quad = w.quadrature;
    row.w_approx = w.approximation;
    return row;
}

} // namespace lcs
