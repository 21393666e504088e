#pragma once

// Coherent-state (anti-Wick) quantization A_f = int f(z) |z>_m <z| d rho(z).
// Closed forms come from ladder algebra; the quadrature route integrates
// f(z) a_v(z) conj(a_u(z)) directly and serves as the cross-check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lcs/bgcs.hpp"
#include "lcs/errors.hpp"
#include "lcs/fock.hpp"
#include "lcs/measure.hpp"

namespace lcs {

enum class SymbolTag { z, z_bar, z_sq, z_bar_sq, abs_z_sq, q, p, q_sq, p_sq, custom };

/// coef * z^z_power * conj(z)^z_bar_power
struct Monomial {
    complex coef;
    int z_power = 0;
    int z_bar_power = 0;
};

class SymbolSpec {
public:
    static SymbolSpec named(SymbolTag tag) {
        if (tag == SymbolTag::custom)
            throw UsageError("SymbolSpec::named: custom symbols need coefficients");
        const double s = std::numbers::sqrt2;
        const complex i(0.0, 1.0);
        SymbolSpec out;
        out.tag_ = tag;
        switch (tag) {
        case SymbolTag::z: out.terms_ = {{1.0, 1, 0}}; break;
        case SymbolTag::z_bar: out.terms_ = {{1.0, 0, 1}}; break;
        case SymbolTag::z_sq: out.terms_ = {{1.0, 2, 0}}; break;
        case SymbolTag::z_bar_sq: out.terms_ = {{1.0, 0, 2}}; break;
        case SymbolTag::abs_z_sq: out.terms_ = {{1.0, 1, 1}}; break;
        // q = (z + conj z)/sqrt2, p = (z - conj z)/(i sqrt2)
        case SymbolTag::q: out.terms_ = {{1.0 / s, 1, 0}, {1.0 / s, 0, 1}}; break;
        case SymbolTag::p: out.terms_ = {{-i / s, 1, 0}, {i / s, 0, 1}}; break;
        case SymbolTag::q_sq: out.terms_ = {{0.5, 2, 0}, {1.0, 1, 1}, {0.5, 0, 2}}; break;
        case SymbolTag::p_sq: out.terms_ = {{-0.5, 2, 0}, {1.0, 1, 1}, {-0.5, 0, 2}}; break;
        case SymbolTag::custom: break;
        }
        return out;
    }

    static SymbolSpec custom(std::vector<Monomial> terms) {
        if (terms.empty())
            throw UsageError("SymbolSpec::custom: polynomial has no terms");
        for (const auto& t : terms)
            if (t.z_power < 0 || t.z_bar_power < 0)
                throw UsageError("SymbolSpec::custom: negative powers are not supported");
        SymbolSpec out;
        out.tag_ = SymbolTag::custom;
        out.terms_ = std::move(terms);
        return out;
    }

    SymbolTag tag() const { return tag_; }
    const std::vector<Monomial>& terms() const { return terms_; }

    int degree() const {
        int d = 0;
        for (const auto& t : terms_)
            d = std::max(d, t.z_power + t.z_bar_power);
        return d;
    }

    /// Largest |z_power - z_bar_power|, the angular harmonic the symbol carries.
    int max_mode() const {
        int k = 0;
        for (const auto& t : terms_)
            k = std::max(k, std::abs(t.z_power - t.z_bar_power));
        return k;
    }

    complex operator()(complex z) const {
        complex sum{};
        for (const auto& t : terms_)
            sum += t.coef * ipow(z, t.z_power) * ipow(std::conj(z), t.z_bar_power);
        return sum;
    }

private:
    static complex ipow(complex x, int n) {
        complex out = 1.0;
        for (int k = 0; k < n; ++k)
            out *= x;
        return out;
    }

    SymbolTag tag_ = SymbolTag::custom;
    std::vector<Monomial> terms_;
};

inline std::string_view to_string(SymbolTag tag) {
    switch (tag) {
    case SymbolTag::z: return "z";
    case SymbolTag::z_bar: return "z_bar";
    case SymbolTag::z_sq: return "z_sq";
    case SymbolTag::z_bar_sq: return "z_bar_sq";
    case SymbolTag::abs_z_sq: return "abs_z_sq";
    case SymbolTag::q: return "q";
    case SymbolTag::p: return "p";
    case SymbolTag::q_sq: return "q_sq";
    case SymbolTag::p_sq: return "p_sq";
    case SymbolTag::custom: return "custom";
    }
    throw UsageError("unknown symbol tag");
}

inline SymbolTag parse_symbol_tag(std::string_view name) {
    for (auto t : {SymbolTag::z, SymbolTag::z_bar, SymbolTag::z_sq, SymbolTag::z_bar_sq, SymbolTag::abs_z_sq,
                   SymbolTag::q, SymbolTag::p, SymbolTag::q_sq, SymbolTag::p_sq})
        if (to_string(t) == name)
            return t;
    throw UsageError("unknown symbol '" + std::string(name) + "'");
}

namespace detail {

inline OperatorMatrix a_z(const SubspaceSpec& spec) {
    const int dim = spec.dim();
    const double m = spec.m;
    OperatorMatrix out(dim, 1);
    for (int v = 0; v + 1 < dim; ++v)
        out.set(v, v + 1, std::sqrt((v + 1.0) * (m + v + 1.0)));
    return out;
}

inline OperatorMatrix a_z_sq(const SubspaceSpec& spec) {
    const int dim = spec.dim();
    const double m = spec.m;
    OperatorMatrix out(dim, 2);
    for (int v = 0; v + 2 < dim; ++v)
        out.set(v, v + 2, std::sqrt((v + 2.0) * (m + v + 2.0) * (v + 1.0) * (m + v + 1.0)));
    return out;
}

inline OperatorMatrix a_abs_z_sq(const SubspaceSpec& spec) {
    OperatorMatrix out(spec.dim(), 0);
    for (int v = 0; v < spec.dim(); ++v)
        out.set(v, v, (v + 1.0) * (spec.m + v + 1.0));
    return out;
}

} // namespace detail

/// Closed-form ladder matrix of A_f for one of the nine named symbols.
inline OperatorMatrix quantize_closed_form(const SymbolSpec& sym, const SubspaceSpec& spec) {
    spec.validate();
    const double s = std::numbers::sqrt2;
    const complex i(0.0, 1.0);
    switch (sym.tag()) {
    case SymbolTag::z: return detail::a_z(spec);
    case SymbolTag::z_bar: return detail::a_z(spec).adjoint();
    case SymbolTag::z_sq: return detail::a_z_sq(spec);
    case SymbolTag::z_bar_sq: return detail::a_z_sq(spec).adjoint();
    case SymbolTag::abs_z_sq: return detail::a_abs_z_sq(spec);
    case SymbolTag::q: {
        const auto az = detail::a_z(spec);
        return (1.0 / s) * (az + az.adjoint());
    }
    case SymbolTag::p: {
        const auto az = detail::a_z(spec);
        return (1.0 / (i * s)) * (az - az.adjoint());
    }
    case SymbolTag::q_sq:
    case SymbolTag::p_sq: {
        const auto az2 = detail::a_z_sq(spec);
        const double sign = sym.tag() == SymbolTag::q_sq ? 0.5 : -0.5;
        return detail::a_abs_z_sq(spec) + sign * (az2 + az2.adjoint());
    }
    case SymbolTag::custom: break;
    }
    throw UsageError("quantize_closed_form: custom symbols are only available by quadrature");
}

/// Grid able to resolve every matrix element of A_f on the truncation.
inline QuadratureGrid quantization_grid(const SymbolSpec& sym, const SubspaceSpec& spec, GridOptions base = {}) {
    return measure_grid(2 * spec.depth + spec.m + 1 + sym.degree(), spec.depth + sym.max_mode(), 0.0, base);
}

/// <v|A_f|u> = int f(z) a_v(z) conj(a_u(z)) d rho(z) by the tensor rule.
inline OperatorMatrix quantize_by_quadrature(const SymbolSpec& sym, const SubspaceSpec& spec,
                                             const QuadratureGrid& grid, int workers = 1) {
    spec.validate();
    grid.require(2 * spec.depth + spec.m + 1 + sym.degree(), spec.depth + sym.max_mode(), "quantize_by_quadrature");
    const int dim = spec.dim();
    const int m = spec.m;
    const std::size_t width = static_cast<std::size_t>(dim) * dim;
    const int n_ang = grid.n_angular();
    const double dphi = grid.angular_weight();
    auto node = [&](double r, std::span<complex> out) {
        std::fill(out.begin(), out.end(), complex{});
        const double scale = measure_density(r, m) * dphi;
        for (int j = 0; j < n_ang; ++j) {
            const complex z = std::polar(r, grid.angle(j));
            const complex f = sym(z);
            const auto a = bgcs_amplitudes(z, m, spec.depth);
            for (int v = 0; v < dim; ++v) {
                const complex fa = f * a[static_cast<std::size_t>(v)];
                for (int u = 0; u < dim; ++u)
                    out[static_cast<std::size_t>(v * dim + u)] += fa * std::conj(a[static_cast<std::size_t>(u)]);
            }
        }
        for (auto& x : out)
            x *= scale;
    };
    auto entries = integrate_radial(grid, width, node, workers);
    // Entries that vanish by angular orthogonality come out at rounding level;
    // keep them so the caller sees the raw quadrature.
    OperatorMatrix out(dim, dim - 1);
    for (int v = 0; v < dim; ++v)
        for (int u = 0; u < dim; ++u)
            out.set(v, u, entries[static_cast<std::size_t>(v * dim + u)]);
    return out;
}

/// Rows/columns excluded from identity checks at the truncation edge.
inline int interior_block(const SubspaceSpec& spec, int degree = 2) {
    return spec.dim() - std::max(2, degree);
}

// ---------------------------------------------------------------------------
// Mean values on |z>_m.

/// <z|A|z>_m for an operator built on a truncation deep enough for |z>_m.
/// The state is truncated at A's depth.
inline complex bgcs_expectation(const OperatorMatrix& a, const CoherentLabel& label, int m) {
    return StateVector(m, bgcs_amplitudes(label.z(), m, a.dim() - 1)).expectation(a);
}

/// Truncation used for expectation values: the auto depth of |z>_m plus a
/// margin covering the band of products of two symbols.
inline SubspaceSpec expectation_spec(const CoherentLabel& label, int m) {
    return SubspaceSpec{m, bgcs_auto_depth(label.rho(), m) + 4};
}

/// <z|A_f|z>_m by the matrix route.
inline complex mean_values_on_bgcs(const SymbolSpec& sym, const CoherentLabel& label, int m) {
    return bgcs_expectation(quantize_closed_form(sym, expectation_spec(label, m)), label, m);
}

/// Closed-form <z|A_f|z>_m: z, conj z, z^2, conj z^2, q, p directly; the
/// operators containing A_z A_zbar pick up 2<K3> (A_{|z|^2} = A_z A_zbar).
inline complex mean_value_closed_form(const SymbolSpec& sym, const CoherentLabel& label, int m) {
    const complex z = label.z();
    const double s = std::numbers::sqrt2;
    const double r2 = std::norm(z);
    const double k3 = mean_k3(label, m);
    switch (sym.tag()) {
    case SymbolTag::z: return z;
    case SymbolTag::z_bar: return std::conj(z);
    case SymbolTag::z_sq: return z * z;
    case SymbolTag::z_bar_sq: return std::conj(z * z);
    case SymbolTag::abs_z_sq: return r2 + 2.0 * k3;
    case SymbolTag::q: return s * z.real();
    case SymbolTag::p: return s * z.imag();
    case SymbolTag::q_sq: return r2 + (z * z).real() + 2.0 * k3;
    case SymbolTag::p_sq: return r2 - (z * z).real() + 2.0 * k3;
    case SymbolTag::custom: break;
    }
    throw UsageError("mean_value_closed_form: no closed form for custom symbols");
}

struct Dispersions {
    double dq2 = 0.0;
    double dp2 = 0.0;
    double product = 0.0;
};

/// (Delta Q)^2 = (Delta P)^2 = <K3> on |z>_m.
inline Dispersions dispersions(const CoherentLabel& label, int m) {
    const double k3 = mean_k3(label, m);
    return {k3, k3, k3 * k3};
}

/// The same dispersions from v^dag Q^2 v - (v^dag Q v)^2 with matrices.
inline Dispersions dispersions_from_matrices(const CoherentLabel& label, int m) {
    const auto spec = expectation_spec(label, m);
    const auto q = quantize_closed_form(SymbolSpec::named(SymbolTag::q), spec);
    const auto p = quantize_closed_form(SymbolSpec::named(SymbolTag::p), spec);
    const auto state = StateVector(m, bgcs_amplitudes(label.z(), m, spec.depth));
    const double mq = state.expectation(q).real();
    const double mp = state.expectation(p).real();
    const double dq2 = state.expectation(q * q).real() - mq * mq;
    const double dp2 = state.expectation(p * p).real() - mp * mp;
    return {dq2, dp2, dq2 * dp2};
}

// ---------------------------------------------------------------------------
// Operator identities of the quadratic symbols.

struct MatrixEntry {
    int row = 0;
    int col = 0;
    complex value;
    bool interior = false;
};

struct DecompositionReport {
    int m = 0;
    int dim = 0;
    int interior = 0;
    /// max |A_{|z|^2} - (Q^2 + P^2)/2 - [A_z, A_zbar]/2| on the interior block.
    double abs_z_sq_residual = 0.0;
    /// Nonzero entries of A_{q^2} - Q^2 - K3 and A_{p^2} - P^2 - K3.
    std::vector<MatrixEntry> delta_q;
    std::vector<MatrixEntry> delta_p;
    /// True when every nonzero residual entry lies outside the interior block.
    bool boundary_supported = false;
    /// Projector terms written next to A_{q^2} (A_{p^2} carries them with the
    /// opposite sign): |2,0><0,0| for m = 0 and sqrt3 |3,1><1,1| for m = 1.
    std::vector<MatrixEntry> claimed_q;
    bool matches_claim = false;
    /// max |(Delta_q + Delta_p) - (2 A_{|z|^2} - Q^2 - P^2 - 2 K3)| over the full matrix.
    double sum_consistency = 0.0;
};

namespace detail {

inline std::vector<MatrixEntry> nonzero_entries(const OperatorMatrix& a, int interior, double threshold) {
    std::vector<MatrixEntry> out;
    for (int r = 0; r < a.dim(); ++r)
        for (int c = 0; c < a.dim(); ++c)
            if (std::abs(a(r, c)) > threshold)
                out.push_back({r, c, a(r, c), r < interior && c < interior});
    return out;
}

} // namespace detail

inline DecompositionReport energy_operator_decomposition_check(const SubspaceSpec& spec, double threshold = 1e-12) {
    spec.validate();
    const int m = spec.m;
    const auto q = quantize_closed_form(SymbolSpec::named(SymbolTag::q), spec);
    const auto p = quantize_closed_form(SymbolSpec::named(SymbolTag::p), spec);
    const auto az = quantize_closed_form(SymbolSpec::named(SymbolTag::z), spec);
    const auto azb = quantize_closed_form(SymbolSpec::named(SymbolTag::z_bar), spec);
    const auto abs2 = quantize_closed_form(SymbolSpec::named(SymbolTag::abs_z_sq), spec);
    const auto aq2 = quantize_closed_form(SymbolSpec::named(SymbolTag::q_sq), spec);
    const auto ap2 = quantize_closed_form(SymbolSpec::named(SymbolTag::p_sq), spec);
    const auto k3 = ladder_matrix(LadderKind::k3, spec);
    const auto q2 = q * q;
    const auto p2 = p * p;

    DecompositionReport rep;
    rep.m = m;
    rep.dim = spec.dim();
    rep.interior = interior_block(spec);
    rep.abs_z_sq_residual = max_abs_diff(abs2, 0.5 * (q2 + p2) + 0.5 * commutator(az, azb), rep.interior);

    const auto dq = aq2 - q2 - k3;
    const auto dp = ap2 - p2 - k3;
    rep.delta_q = detail::nonzero_entries(dq, rep.interior, threshold);
    rep.delta_p = detail::nonzero_entries(dp, rep.interior, threshold);
    rep.boundary_supported =
        std::none_of(rep.delta_q.begin(), rep.delta_q.end(), [](const MatrixEntry& e) { return e.interior; }) &&
        std::none_of(rep.delta_p.begin(), rep.delta_p.end(), [](const MatrixEntry& e) { return e.interior; });

    // |n, m><n', m| with n = m + v: |2,0><0,0| is (v, v') = (2, 0) at m = 0,
    // |3,1><1,1| is (2, 0) at m = 1. For m >= 2 neither vector lies in h_m.
    if (m == 0)
        rep.claimed_q.push_back({2, 0, 1.0, 2 < rep.interior});
    else if (m == 1)
        rep.claimed_q.push_back({2, 0, std::sqrt(3.0), 2 < rep.interior});

    OperatorMatrix claim_q(spec.dim(), spec.dim() - 1);
    for (const auto& e : rep.claimed_q)
        claim_q.set(e.row, e.col, e.value);
    rep.matches_claim = max_abs_diff(dq, claim_q, rep.interior) <= threshold &&
                        max_abs_diff(dp, -1.0 * claim_q, rep.interior) <= threshold;

    rep.sum_consistency = max_abs_diff(dq + dp, 2.0 * abs2 - q2 - p2 - 2.0 * k3, spec.dim());
    return rep;
}

struct CommutatorCheck {
    std::string name;
    double max_abs_error = 0.0;
};

struct CommutatorReport {
    int m = 0;
    int interior = 0;
    std::vector<CommutatorCheck> checks;

    double worst() const {
        double w = 0.0;
        for (const auto& c : checks)
            w = std::max(w, c.max_abs_error);
        return w;
    }
};

/// Closed-form commutators of A_{|z|^2} with A_z, A_zbar, A_{z^2}, A_{zbar^2},
/// plus [A_z, A_zbar] = 2 K3 and [Q, P] = 2i K3, compared with matrix algebra
/// on the interior block.
inline CommutatorReport energy_commutators(const SubspaceSpec& spec) {
    spec.validate();
    const int dim = spec.dim();
    const double m = spec.m;
    auto named = [&](SymbolTag t) { return quantize_closed_form(SymbolSpec::named(t), spec); };
    const auto abs2 = named(SymbolTag::abs_z_sq);
    const auto az = named(SymbolTag::z);
    const auto azb = named(SymbolTag::z_bar);
    const auto az2 = named(SymbolTag::z_sq);
    const auto azb2 = named(SymbolTag::z_bar_sq);
    const auto k3 = ladder_matrix(LadderKind::k3, spec);

    OperatorMatrix c1(dim, 1), c2(dim, 1), c3(dim, 2), c4(dim, 2);
    for (int v = 0; v + 1 < dim; ++v)
        c1.set(v, v + 1, -(2.0 * v + m + 3.0) * std::sqrt((v + 1.0) * (v + m + 1.0)));
    for (int v = 1; v < dim; ++v)
        c2.set(v, v - 1, (2.0 * v + m + 1.0) * std::sqrt(v * (v + m)));
    for (int v = 0; v + 2 < dim; ++v) {
        const double root = std::sqrt((v + 2.0) * (m + v + 2.0) * (v + 1.0) * (m + v + 1.0));
        c3.set(v, v + 2, -2.0 * (2.0 * v + m + 4.0) * root);
        c4.set(v + 2, v, 2.0 * (2.0 * v + m + 4.0) * root);
    }

    CommutatorReport rep;
    rep.m = spec.m;
    rep.interior = interior_block(spec);
    const int block = rep.interior;
    rep.checks.push_back({"[A_z, A_zbar] = 2 K3", max_abs_diff(commutator(az, azb), 2.0 * k3, block)});
    rep.checks.push_back({"[Q, P] = 2i K3", max_abs_diff(commutator(named(SymbolTag::q), named(SymbolTag::p)),
                                                        complex(0.0, 2.0) * k3, block)});
    rep.checks.push_back({"[A_|z|^2, A_z]", max_abs_diff(commutator(abs2, az), c1, block)});
    rep.checks.push_back({"[A_|z|^2, A_zbar]", max_abs_diff(commutator(abs2, azb), c2, block)});
    rep.checks.push_back({"[A_|z|^2, A_zbar] = 2 K3 sqrt form", max_abs_diff(c2, 2.0 * (k3 * azb), block)});
    rep.checks.push_back({"[A_|z|^2, A_z^2]", max_abs_diff(commutator(abs2, az2), c3, block)});
    rep.checks.push_back({"[A_|z|^2, A_zbar^2]", max_abs_diff(commutator(abs2, azb2), c4, block)});
    return rep;
}

} // namespace lcs
