#pragma once

// Barut-Girardello coherent states |z>_m of su(1,1) on the subspace h_m:
//   |z>_m = sum_v a_v(z) |v>,  a_v = |z|^{m/2} z^v / sqrt(I_m(2|z|) v! (v+m)!).
// Amplitude magnitudes are assembled in log space; v! (v+m)! overflows a
// double long before the amplitudes become negligible.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "lcs/errors.hpp"
#include "lcs/fock.hpp"
#include "lcs/measure.hpp"
#include "lcs/specfun.hpp"

namespace lcs {

class CoherentLabel {
public:
    CoherentLabel() = default;
    CoherentLabel(complex z) : z_(z) {  // NOLINT(google-explicit-constructor)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw DomainError("CoherentLabel: label must be finite");
    }
    CoherentLabel(double re, double im) : CoherentLabel(complex(re, im)) {}

    static CoherentLabel polar(double rho, double phi) {
        if (!(rho >= 0.0))
            throw DomainError("CoherentLabel: modulus must be non-negative");
        return CoherentLabel(std::polar(rho, phi));
    }

    complex z() const { return z_; }
    double rho() const { return std::abs(z_); }
    /// arg z in [0, 2 pi); 0 for the origin.
    double phi() const {
        if (z_ == complex{})
            return 0.0;
        double a = std::arg(z_);
        if (a < 0.0)
            a += 2.0 * std::numbers::pi;
        return a >= 2.0 * std::numbers::pi ? 0.0 : a;
    }

private:
    complex z_{};
};

class StateVector {
public:
    StateVector(int m, std::vector<complex> amplitudes) : m_(m), amps_(std::move(amplitudes)) {
        if (m < 0)
            throw DomainError("StateVector: m must be non-negative");
        if (amps_.empty())
            throw UsageError("StateVector: need at least one amplitude");
    }

    int m() const { return m_; }
    int depth() const { return static_cast<int>(amps_.size()) - 1; }
    int dim() const { return static_cast<int>(amps_.size()); }
    std::span<const complex> amplitudes() const { return amps_; }
    complex operator[](int v) const { return amps_[static_cast<std::size_t>(v)]; }

    double norm_sq() const {
        specfun::CompensatedSum<double> s;
        for (const auto& a : amps_)
            s.add(std::norm(a));
        return s.value();
    }

    /// <this|other> = sum conj(a_v) b_v over the common levels.
    complex inner(const StateVector& other) const {
        if (other.m_ != m_)
            throw UsageError("StateVector::inner: states live in different subspaces");
        specfun::CompensatedSum<complex> s;
        const int n = std::min(dim(), other.dim());
        for (int v = 0; v < n; ++v)
            s.add(std::conj((*this)[v]) * other[v]);
        return s.value();
    }

    /// <this|A|this> for an operator on the same truncation.
    complex expectation(const OperatorMatrix& a) const {
        if (a.dim() != dim())
            throw UsageError("StateVector::expectation: dimension mismatch");
        const auto av = a.apply(amps_);
        specfun::CompensatedSum<complex> s;
        for (int v = 0; v < dim(); ++v)
            s.add(std::conj((*this)[v]) * av[static_cast<std::size_t>(v)]);
        return s.value();
    }

private:
    int m_;
    std::vector<complex> amps_;
};

/// ln |a_v(z)| for z != 0, given ln I_m(2|z|).
inline double bgcs_ln_magnitude(int v, int m, double ln_rho, double ln_i) {
    return (0.5 * m + v) * ln_rho - 0.5 * ln_i -
           0.5 * (specfun::ln_factorial(v) + specfun::ln_factorial(v + m));
}

/// Amplitudes a_0..a_depth of |z>_m.
inline std::vector<complex> bgcs_amplitudes(complex z, int m, int depth) {
    if (m < 0)
        throw DomainError("bgcs_amplitudes: m must be non-negative");
    if (depth < 0)
        throw UsageError("bgcs_amplitudes: depth must be non-negative");
    std::vector<complex> out(static_cast<std::size_t>(depth) + 1);
    const double rho = std::abs(z);
    if (rho == 0.0) {
        out[0] = 1.0;
        return out;
    }
    const double ln_rho = std::log(rho);
    const double ln_i = specfun::ln_bessel_i(m, 2.0 * rho);
    const complex unit = z / rho;
    complex phase = 1.0;
    for (int v = 0; v <= depth; ++v) {
        out[static_cast<std::size_t>(v)] = std::exp(bgcs_ln_magnitude(v, m, ln_rho, ln_i)) * phase;
        phase *= unit;
    }
    return out;
}

/// Default truncation for |z>_m: max(30, ceil(2e|z|) + ceil(10 sqrt(|z|+1))),
/// then extended until |a_K|^2 < tail_tol.
inline int bgcs_auto_depth(double rho, int m, double tail_tol = 1e-16) {
    if (!(tail_tol > 0.0))
        throw UsageError("bgcs_auto_depth: tail tolerance must be positive");
    int depth = std::max(30, static_cast<int>(std::ceil(2.0 * std::numbers::e * rho)) +
                                 static_cast<int>(std::ceil(10.0 * std::sqrt(rho + 1.0))));
    if (rho == 0.0)
        return depth;
    const double ln_rho = std::log(rho);
    const double ln_i = specfun::ln_bessel_i(m, 2.0 * rho);
    const double ln_tol = std::log(tail_tol);
    while (2.0 * bgcs_ln_magnitude(depth, m, ln_rho, ln_i) >= ln_tol)
        ++depth;
    return depth;
}

/// |z>_m truncated at the depth of spec.
inline StateVector bgcs_state(const CoherentLabel& label, const SubspaceSpec& spec) {
    spec.validate();
    return StateVector(spec.m, bgcs_amplitudes(label.z(), spec.m, spec.depth));
}

/// |z>_m with automatic depth.
inline StateVector bgcs_state(const CoherentLabel& label, int m, double tail_tol = 1e-16) {
    const int depth = bgcs_auto_depth(label.rho(), m, tail_tol);
    return StateVector(m, bgcs_amplitudes(label.z(), m, depth));
}

namespace detail {

/// sum_v w^v / (v! (v+m)!) e^{-2 sqrt|w|}, summed term by term in log space.
/// Used only when the plain series would overflow.
inline complex scaled_reduced_series(int m, complex w) {
    const double aw = std::abs(w);
    const double ln_w = std::log(aw);
    const double shift = 2.0 * std::sqrt(aw);
    const complex unit = w / aw;
    specfun::CompensatedSum<complex> sum;
    complex phase = 1.0;
    const int peak = static_cast<int>(std::sqrt(aw));
    for (int v = 0; v < 100000; ++v) {
        const double ln_term = v * ln_w - specfun::ln_factorial(v) - specfun::ln_factorial(v + m) - shift;
        sum.add(std::exp(ln_term) * phase);
        phase *= unit;
        if (v > peak && ln_term < -40.0)
            return sum.value();
    }
    throw EvaluationError("overlap: scaled series did not converge", std::abs(sum.value()));
}

} // namespace detail

/// Reproducing kernel <zp|z>_m. Evaluated through the single-valued series in
/// w = conj(zp) z, so no square-root branch of I_m(2 sqrt(conj(zp) z)) is
/// ever chosen.
inline complex overlap(const CoherentLabel& zp, const CoherentLabel& z, int m) {
    if (m < 0)
        throw DomainError("overlap: m must be non-negative");
    const double rp = zp.rho();
    const double r = z.rho();
    // <zp|0> = conj(a_0(zp)), and a_0 is real.
    auto a0 = [m](double rho) {
        if (rho == 0.0)
            return 1.0;
        return std::exp(bgcs_ln_magnitude(0, m, std::log(rho), specfun::ln_bessel_i(m, 2.0 * rho)));
    };
    if (r == 0.0)
        return a0(rp);
    if (rp == 0.0)
        return a0(r);

    const complex w = std::conj(zp.z()) * z.z();
    const double ln_pref = 0.5 * m * (std::log(rp) + std::log(r)) -
                           0.5 * (specfun::ln_bessel_i(m, 2.0 * rp) + specfun::ln_bessel_i(m, 2.0 * r));
    if (std::abs(w) <= 1e4)
        return std::exp(ln_pref) * specfun::bessel_i_reduced(m, w);
    return std::exp(ln_pref + 2.0 * std::sqrt(std::abs(w))) * detail::scaled_reduced_series(m, w);
}

/// Residual |int d rho(z'') <z''|z> <zp|z''> - <zp|z>| of the reproducing
/// property, by quadrature.
inline double kernel_idempotence_check(const CoherentLabel& z, const CoherentLabel& zp, int m,
                                       const QuadratureGrid& grid, int workers = 1) {
    grid.require_label(std::max(z.rho(), zp.rho()), "kernel_idempotence_check");
    const complex quad = integrate(
        [&](complex zz) {
            const CoherentLabel mid(zz);
            return overlap(mid, z, m) * overlap(zp, mid, m);
        },
        m, grid, workers);
    return std::abs(quad - overlap(zp, z, m));
}

/// Grid for kernel_idempotence_check with labels up to max_label.
inline QuadratureGrid kernel_grid(double max_label, GridOptions base = {}) {
    base.decay_rate = 2.0;
    return measure_grid(0, 0, max_label, base);
}

// ---------------------------------------------------------------------------
// Mean values. Closed forms use Bessel ratios I_{m+k}(2|z|)/I_m(2|z|).

inline double mean_n(const CoherentLabel& label, int m) {
    const double r = label.rho();
    return r * specfun::bessel_i_ratio(m, 1, 2.0 * r);
}

inline double mean_n_sq(const CoherentLabel& label, int m) {
    const double r = label.rho();
    const double x = 2.0 * r;
    return r * r * specfun::bessel_i_ratio(m, 2, x) + r * specfun::bessel_i_ratio(m, 1, x);
}

inline double mean_k3(const CoherentLabel& label, int m) { return mean_n(label, m) + 0.5 * (m + 1); }

inline double mean_k3_sq(const CoherentLabel& label, int m) {
    const double r = label.rho();
    const double x = 2.0 * r;
    const double h = 0.5 * (m + 1);
    return r * r * specfun::bessel_i_ratio(m, 2, x) + (m + 2) * r * specfun::bessel_i_ratio(m, 1, x) + h * h;
}

/// sum_v v^power |a_v|^2 = |z|^m S_power(|z|) / I_m(2|z|), with S from
/// bessel_moment_sum. Independent of the Bessel-ratio closed forms.
inline double number_moment_series(const CoherentLabel& label, int m, int power) {
    const double r = label.rho();
    if (r == 0.0)
        return power == 0 ? 1.0 : 0.0;
    const double s = specfun::bessel_moment_sum(power, m, r);
    return std::exp(m * std::log(r) + std::log(s) - specfun::ln_bessel_i(m, 2.0 * r));
}

inline double mean_k3_series(const CoherentLabel& label, int m) {
    return number_moment_series(label, m, 1) + 0.5 * (m + 1);
}

inline double mean_k3_sq_series(const CoherentLabel& label, int m) {
    const double h = 0.5 * (m + 1);
    return number_moment_series(label, m, 2) + 2.0 * h * number_moment_series(label, m, 1) + h * h;
}

/// Intensity correlation g2 = I_m I_{m+2} / I_{m+1}^2, with the limit
/// (m+1)/(m+2) at the origin.
inline double g2(const CoherentLabel& label, int m) {
    const double r = label.rho();
    if (r == 0.0)
        return (m + 1.0) / (m + 2.0);
    const double x = 2.0 * r;
    const double r1 = specfun::bessel_i_ratio(m, 1, x);
    const double r21 = specfun::bessel_i_ratio(m + 1, 1, x);
    return r21 / r1;
}

/// Mandel parameter (<N^2> - <N>^2 - <N>)/<N>, written as
/// |z| (I_{m+2}/I_{m+1} - I_{m+1}/I_m) to avoid forming <N^2> - <N>^2.
inline double mandel_q(const CoherentLabel& label, int m) {
    const double r = label.rho();
    if (r == 0.0)
        throw DomainError("mandel_q: undefined at z = 0 (<N> = 0)");
    const double x = 2.0 * r;
    return r * (specfun::bessel_i_ratio(m + 1, 1, x) - specfun::bessel_i_ratio(m, 1, x));
}

inline double fano(const CoherentLabel& label, int m) {
    if (label.rho() == 0.0)
        throw DomainError("fano: undefined at z = 0 (<N> = 0)");
    return mandel_q(label, m) + 1.0;
}

/// Signal-to-noise ratio <Q>^2/(Delta Q)^2 = 2|z|^2 cos^2(phi) / <K3>
/// (sin^2 for the P quadrature).
inline double snr(const CoherentLabel& label, int m, bool use_q_coordinate = true) {
    const double r = label.rho();
    const double trig = use_q_coordinate ? std::cos(label.phi()) : std::sin(label.phi());
    return 2.0 * r * r * trig * trig / mean_k3(label, m);
}

// ---------------------------------------------------------------------------
// Time evolution. Only the label rotates; no global phase is attached.

/// z(t) = z exp(-i rate t). The default rate is (Omega - omega_c)/2.
inline CoherentLabel evolve_label(const CoherentLabel& label, double t, const PhysicalParams& params,
                                  std::optional<double> rate = std::nullopt) {
    const double w = rate ? *rate : params.omega_minus();
    return CoherentLabel(label.z() * std::polar(1.0, -w * t));
}

/// rho_{z0}(z, t) = |<z|z0(t)>|^2.
inline double evolved_density(const CoherentLabel& z, const CoherentLabel& z0, double t, int m,
                              const PhysicalParams& params, std::optional<double> rate = std::nullopt) {
    return std::norm(overlap(z, evolve_label(z0, t, params, rate), m));
}

/// The same density in the closed form
///   I_m(2 sqrt(z0(t) conj(z))) I_m(2 sqrt(conj(z0(t)) z)) / (I_m(2|z|) I_m(2|z0(t)|))
/// with principal square roots and the complex-argument series.
inline double evolved_density_bessel_form(const CoherentLabel& z, const CoherentLabel& z0, double t, int m,
                                          const PhysicalParams& params,
                                          std::optional<double> rate = std::nullopt) {
    const complex zt = evolve_label(z0, t, params, rate).z();
    const complex u = zt * std::conj(z.z());
    const complex num = specfun::bessel_i(m, 2.0 * std::sqrt(u)) * specfun::bessel_i(m, 2.0 * std::sqrt(std::conj(u)));
    const double den = specfun::bessel_i(m, 2.0 * z.rho()) * specfun::bessel_i(m, 2.0 * std::abs(zt));
    if (den == 0.0)
        throw DomainError("evolved_density_bessel_form: both labels at the origin with m > 0");
    return num.real() / den;
}

// ---------------------------------------------------------------------------
// Analytic representation f(z; m) = sum_v C_v z^v / sqrt(v! (v+m)!).

inline complex analytic_function(const StateVector& state, complex z) {
    const int m = state.m();
    specfun::CompensatedSum<complex> sum;
    complex power = 1.0;
    for (int v = 0; v < state.dim(); ++v) {
        const double norm = std::exp(-0.5 * (specfun::ln_factorial(v) + specfun::ln_factorial(v + m)));
        sum.add(state[v] * power * norm);
        power *= z;
    }
    return sum.value();
}

/// Grid for analytic_scalar_product between states truncated at depth.
inline QuadratureGrid analytic_grid(int m, int depth, GridOptions base = {}) {
    return measure_grid(2 * depth + m + 1, depth, 0.0, base);
}

/// int d rho(z) (|z|^m / I_m(2|z|)) conj(f_1(conj z)) f_2(conj z), which
/// equals <Phi_1|Phi_2>. The weight d rho |z|^m / I_m = (2/pi) |z|^m K_m(2|z|) d^2z
/// is formed directly, so no I_m overflow occurs.
inline complex analytic_scalar_product(const StateVector& s1, const StateVector& s2, const QuadratureGrid& grid,
                                       int workers = 1) {
    if (s1.m() != s2.m())
        throw UsageError("analytic_scalar_product: states live in different subspaces");
    const int m = s1.m();
    const int depth = std::max(s1.depth(), s2.depth());
    grid.require(2 * depth + m + 1, depth, "analytic_scalar_product");
    const int n_ang = grid.n_angular();
    const double dphi = grid.angular_weight();
    auto node = [&](double r, std::span<complex> out) {
        const double weight = (2.0 / std::numbers::pi) * std::exp(m * std::log(r) + specfun::ln_bessel_k(m, 2.0 * r));
        specfun::CompensatedSum<complex> acc;
        for (int j = 0; j < n_ang; ++j) {
            const complex zb = std::conj(std::polar(r, grid.angle(j)));
            acc.add(std::conj(analytic_function(s1, zb)) * analytic_function(s2, zb));
        }
        out[0] = acc.value() * (weight * dphi);
    };
    return integrate_radial(grid, 1, node, workers)[0];
}

} // namespace lcs
