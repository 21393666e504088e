#pragma once

// Truncated Fock subspace h_m = span{|n, m>}_{n >= m}. States are indexed by
// v = n - m = 0..K so every subspace is a dense 0-based range. Operators are
// the top-left (K+1)x(K+1) block of the infinite matrices.

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lcs/errors.hpp"

namespace lcs {

using complex = std::complex<double>;

class PhysicalParams {
public:
    PhysicalParams(double hbar, double mass, double omega0, double omega_c,
                   std::optional<double> beta = std::nullopt,
                   std::optional<double> area = std::nullopt)
        : hbar_(hbar), mass_(mass), omega0_(omega0), omega_c_(omega_c), beta_(beta), area_(area) {
        if (!(hbar > 0.0) || !(mass > 0.0))
            throw DomainError("PhysicalParams: hbar and mass must be positive");
        if (!(omega0 >= 0.0) || !(omega_c >= 0.0))
            throw DomainError("PhysicalParams: omega0 and omega_c must be non-negative");
        if (omega0 == 0.0 && omega_c == 0.0)
            throw DomainError("PhysicalParams: omega0 and omega_c cannot both vanish");
        if (beta && !(*beta > 0.0))
            throw DomainError("PhysicalParams: beta must be positive");
        if (area && !(*area > 0.0))
            throw DomainError("PhysicalParams: area must be positive");
        omega_ = std::sqrt(omega_c * omega_c + 4.0 * omega0 * omega0);
    }

    double hbar() const { return hbar_; }
    double mass() const { return mass_; }
    double omega0() const { return omega0_; }
    double omega_c() const { return omega_c_; }
    std::optional<double> beta() const { return beta_; }
    std::optional<double> area() const { return area_; }

    /// Hybrid frequency sqrt(omega_c^2 + 4 omega0^2).
    double omega() const { return omega_; }
    /// (Omega - omega_c) / 2, the frequency of the thermal ladder.
    double omega_minus() const { return 0.5 * (omega_ - omega_c_); }
    /// Ground-orbit radius sqrt(hbar / (M Omega)).
    double length() const { return std::sqrt(hbar_ / (mass_ * omega_)); }
    double length_minus() const {
        if (!(omega_minus() > 0.0))
            throw DomainError("PhysicalParams: l_minus requires Omega > omega_c");
        return std::sqrt(hbar_ / (mass_ * omega_minus()));
    }

    /// Thermal quantities need beta and a finite Bose factor.
    void require_thermal() const {
        if (!beta_)
            throw DomainError("thermal quantity requested without beta");
        if (!(omega_ > omega_c_))
            throw DomainError("thermal quantity requires Omega > omega_c (omega0 > 0)");
    }

private:
    double hbar_, mass_, omega0_, omega_c_;
    std::optional<double> beta_, area_;
    double omega_ = 0.0;
};

struct SubspaceSpec {
    int m = 0;
    int depth = 8;

    int dim() const { return depth + 1; }

    void validate() const {
        if (m < 0)
            throw DomainError("SubspaceSpec: m must be non-negative");
        if (depth < 8)
            throw UsageError("SubspaceSpec: depth must be at least 8");
    }
};

/// Dense complex matrix over the truncated v-basis with an upper bound on
/// the bandwidth: entries with |row - col| > band are exactly zero.
class OperatorMatrix {
public:
    OperatorMatrix() = default;

    OperatorMatrix(int dim, int band) : dim_(dim), band_(std::clamp(band, 0, std::max(dim - 1, 0))) {
        if (dim <= 0)
            throw UsageError("OperatorMatrix: dimension must be positive");
        data_.assign(static_cast<std::size_t>(dim) * dim, complex{});
    }

    static OperatorMatrix identity(int dim) {
        OperatorMatrix out(dim, 0);
        for (int i = 0; i < dim; ++i)
            out.set(i, i, 1.0);
        return out;
    }

    static OperatorMatrix diagonal(std::span<const double> diag) {
        OperatorMatrix out(static_cast<int>(diag.size()), 0);
        for (int i = 0; i < out.dim(); ++i)
            out.set(i, i, diag[static_cast<std::size_t>(i)]);
        return out;
    }

    /// Builds a matrix from row-major entries, declaring the tightest band
    /// that covers every nonzero.
    static OperatorMatrix from_dense(int dim, std::vector<complex> entries) {
        if (entries.size() != static_cast<std::size_t>(dim) * dim)
            throw UsageError("OperatorMatrix::from_dense: entry count does not match dimension");
        OperatorMatrix out(dim, dim - 1);
        out.data_ = std::move(entries);
        int band = 0;
        for (int r = 0; r < dim; ++r)
            for (int c = 0; c < dim; ++c)
                if (out(r, c) != complex{})
                    band = std::max(band, std::abs(r - c));
        out.band_ = band;
        return out;
    }

    int dim() const { return dim_; }
    int band() const { return band_; }

    complex operator()(int row, int col) const { return data_[index(row, col)]; }

    void set(int row, int col, complex value) {
        if (std::abs(row - col) > band_ && value != complex{})
            throw UsageError("OperatorMatrix::set: entry outside declared band");
        data_[index(row, col)] = value;
    }

    const std::vector<complex>& entries() const { return data_; }

    /// Set for pi_+/-, X_+/- realizations, which really map between different m.
    bool cross_subspace() const { return cross_subspace_; }
    void mark_cross_subspace() { cross_subspace_ = true; }

    OperatorMatrix adjoint() const {
        OperatorMatrix out(dim_, band_);
        for (int r = 0; r < dim_; ++r)
            for (int c = 0; c < dim_; ++c)
                out.data_[out.index(c, r)] = std::conj((*this)(r, c));
        out.cross_subspace_ = cross_subspace_;
        return out;
    }

    std::vector<complex> apply(std::span<const complex> v) const {
        if (v.size() != static_cast<std::size_t>(dim_))
            throw UsageError("OperatorMatrix::apply: vector length mismatch");
        std::vector<complex> out(v.size());
        for (int r = 0; r < dim_; ++r) {
            complex acc{};
            for (int c = std::max(0, r - band_); c <= std::min(dim_ - 1, r + band_); ++c)
                acc += (*this)(r, c) * v[static_cast<std::size_t>(c)];
            out[static_cast<std::size_t>(r)] = acc;
        }
        return out;
    }

    /// The leading block x block submatrix.
    OperatorMatrix leading_block(int block) const {
        if (block <= 0 || block > dim_)
            throw UsageError("OperatorMatrix::leading_block: bad block size");
        OperatorMatrix out(block, band_);
        for (int r = 0; r < block; ++r)
            for (int c = 0; c < block; ++c)
                out.data_[out.index(r, c)] = (*this)(r, c);
        return out;
    }

    OperatorMatrix& operator*=(complex s) {
        for (auto& x : data_)
            x *= s;
        return *this;
    }

    friend OperatorMatrix operator*(complex s, OperatorMatrix a) { return a *= s; }
    friend OperatorMatrix operator*(OperatorMatrix a, complex s) { return a *= s; }

    friend OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b) {
        return combine(a, b, 1.0);
    }
    friend OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b) {
        return combine(a, b, -1.0);
    }

    /// Banded product; every entry is a compensated (fma-based) dot product.
    friend OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
        require_same_dim(a, b, "product");
        return fused(a, b, nullptr);
    }

    /// a b - b a with each entry accumulated as one compensated dot product,
    /// so large cancelling entries keep full relative accuracy.
    friend OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b) {
        if (a.dim_ != b.dim_)
            throw UsageError("commutator: dimension mismatch");
        return fused(a, b, &b);
    }

    friend bool operator==(const OperatorMatrix& a, const OperatorMatrix& b) {
        return a.dim_ == b.dim_ && a.data_ == b.data_;
    }

private:
    // Compensated dot product (Ogita, Rump and Oishi's Dot2): as accurate as
    // evaluation in twice the working precision followed by one rounding.
    class Dot2 {
    public:
        void add(complex x, complex y) {
            add_real(re_, x.real(), y.real());
            add_real(re_, -x.imag(), y.imag());
            add_real(im_, x.real(), y.imag());
            add_real(im_, x.imag(), y.real());
        }
        complex value() const { return {re_.sum + re_.comp, im_.sum + im_.comp}; }

    private:
        struct Acc {
            double sum = 0.0;
            double comp = 0.0;
        };
        static void add_real(Acc& acc, double x, double y) {
            const double p = x * y;
            const double e = std::fma(x, y, -p);
            const double t = acc.sum + p;
            const double z = t - acc.sum;
            acc.comp += ((acc.sum - (t - z)) + (p - z)) + e;
            acc.sum = t;
        }
        Acc re_, im_;
    };

    // a b, or a b - minus a when minus is given.
    static OperatorMatrix fused(const OperatorMatrix& a, const OperatorMatrix& b, const OperatorMatrix* minus) {
        const int n = a.dim_;
        const int band = std::min(n - 1, a.band_ + b.band_);
        OperatorMatrix out(n, band);
        for (int r = 0; r < n; ++r) {
            for (int c = std::max(0, r - band); c <= std::min(n - 1, r + band); ++c) {
                Dot2 acc;
                const int lo = std::max({0, r - a.band_, c - b.band_});
                const int hi = std::min({n - 1, r + a.band_, c + b.band_});
                for (int k = lo; k <= hi; ++k)
                    acc.add(a(r, k), b(k, c));
                if (minus) {
                    const int lo2 = std::max({0, r - minus->band_, c - a.band_});
                    const int hi2 = std::min({n - 1, r + minus->band_, c + a.band_});
                    for (int k = lo2; k <= hi2; ++k)
                        acc.add(-(*minus)(r, k), a(k, c));
                }
                out.data_[out.index(r, c)] = acc.value();
            }
        }
        return out;
    }

    std::size_t index(int row, int col) const {
        if (row < 0 || col < 0 || row >= dim_ || col >= dim_)
            throw UsageError("OperatorMatrix: index out of range");
        return static_cast<std::size_t>(row) * dim_ + col;
    }

    static void require_same_dim(const OperatorMatrix& a, const OperatorMatrix& b, const char* what) {
        if (a.dim_ != b.dim_)
            throw UsageError(std::string("OperatorMatrix ") + what + ": dimension mismatch (" +
                             std::to_string(a.dim_) + " vs " + std::to_string(b.dim_) + ")");
    }

    static OperatorMatrix combine(const OperatorMatrix& a, const OperatorMatrix& b, double sign) {
        require_same_dim(a, b, "sum");
        OperatorMatrix out(a.dim_, std::max(a.band_, b.band_));
        for (std::size_t i = 0; i < out.data_.size(); ++i)
            out.data_[i] = a.data_[i] + sign * b.data_[i];
        return out;
    }

    int dim_ = 0;
    int band_ = 0;
    bool cross_subspace_ = false;
    std::vector<complex> data_;
};

/// Largest |a_ij - b_ij| over the leading block x block submatrix.
inline double max_abs_diff(const OperatorMatrix& a, const OperatorMatrix& b, int block) {
    if (a.dim() != b.dim())
        throw UsageError("max_abs_diff: dimension mismatch");
    block = std::min(block, a.dim());
    double worst = 0.0;
    for (int r = 0; r < block; ++r)
        for (int c = 0; c < block; ++c)
            worst = std::max(worst, std::abs(a(r, c) - b(r, c)));
    return worst;
}

enum class LadderKind { pi_plus, pi_minus, x_plus, x_minus, k_plus, k_minus, k3, number };

inline std::string_view to_string(LadderKind kind) {
    switch (kind) {
    case LadderKind::pi_plus: return "pi_plus";
    case LadderKind::pi_minus: return "pi_minus";
    case LadderKind::x_plus: return "x_plus";
    case LadderKind::x_minus: return "x_minus";
    case LadderKind::k_plus: return "k_plus";
    case LadderKind::k_minus: return "k_minus";
    case LadderKind::k3: return "k3";
    case LadderKind::number: return "number";
    }
    throw UsageError("unknown ladder kind");
}

inline LadderKind parse_ladder_kind(std::string_view name) {
    for (auto k : {LadderKind::pi_plus, LadderKind::pi_minus, LadderKind::x_plus, LadderKind::x_minus,
                   LadderKind::k_plus, LadderKind::k_minus, LadderKind::k3, LadderKind::number})
        if (to_string(k) == name)
            return k;
    throw UsageError("unknown ladder kind '" + std::string(name) + "'");
}

/// Matrix of a ladder operator on the truncated subspace.
///
/// k_plus, k_minus, k3 and number act within h_m. The step operators pi_+/-
/// and orbit-center operators X_+/- change m, so they are only available as
/// flagged surrogates:
///   pi_plus  -> diagonal product pi_+ pi_- (entry n = m + v)
///   pi_minus -> diagonal product pi_- pi_+ (entry n + 1)
///   x_plus   -> slot shift v -> v - 1 with weight sqrt(v)   (X_+|n,m> = sqrt(n-m)|n,m+1>)
///   x_minus  -> slot shift v -> v + 1 with weight sqrt(v+1) (X_-|n,m> = sqrt(n-m+1)|n,m-1>)
inline OperatorMatrix ladder_matrix(LadderKind kind, const SubspaceSpec& spec) {
    spec.validate();
    const int dim = spec.dim();
    const double m = spec.m;
    auto diag = [&](auto&& f) {
        OperatorMatrix out(dim, 0);
        for (int v = 0; v < dim; ++v)
            out.set(v, v, f(static_cast<double>(v)));
        return out;
    };
    switch (kind) {
    case LadderKind::k_plus: {
        OperatorMatrix out(dim, 1);
        for (int v = 1; v < dim; ++v)
            out.set(v, v - 1, std::sqrt((m + v) * v));
        return out;
    }
    case LadderKind::k_minus: {
        OperatorMatrix out(dim, 1);
        for (int v = 1; v < dim; ++v)
            out.set(v - 1, v, std::sqrt((m + v) * v));
        return out;
    }
    case LadderKind::k3:
        return diag([&](double v) { return v + 0.5 * (m + 1.0); });
    case LadderKind::number:
        return diag([](double v) { return v; });
    case LadderKind::pi_plus: {
        auto out = diag([&](double v) { return m + v; });
        out.mark_cross_subspace();
        return out;
    }
    case LadderKind::pi_minus: {
        auto out = diag([&](double v) { return m + v + 1.0; });
        out.mark_cross_subspace();
        return out;
    }
    case LadderKind::x_plus: {
        OperatorMatrix out(dim, 1);
        for (int v = 1; v < dim; ++v)
            out.set(v - 1, v, std::sqrt(static_cast<double>(v)));
        out.mark_cross_subspace();
        return out;
    }
    case LadderKind::x_minus: {
        OperatorMatrix out(dim, 1);
        for (int v = 1; v < dim; ++v)
            out.set(v, v - 1, std::sqrt(static_cast<double>(v)));
        out.mark_cross_subspace();
        return out;
    }
    }
    throw UsageError("ladder_matrix: invalid kind");
}

/// Fock-Darwin level E_{n,m} = hbar Omega (n + 1/2) - (hbar/2)(Omega - omega_c) m.
inline double landau_energy(int n, int m, const PhysicalParams& p) {
    return p.hbar() * p.omega() * (n + 0.5) - 0.5 * p.hbar() * (p.omega() - p.omega_c()) * m;
}

/// Diagonal Hamiltonian on h_m with entries E_{m+v, m}.
inline OperatorMatrix hamiltonian_matrix(const SubspaceSpec& spec, const PhysicalParams& params) {
    spec.validate();
    OperatorMatrix out(spec.dim(), 0);
    for (int v = 0; v < spec.dim(); ++v)
        out.set(v, v, landau_energy(spec.m + v, spec.m, params));
    return out;
}

/// The Hamiltonian assembled from the ladder products,
///   H = 1/2 [ (pi_+ pi_- / 2M)(1 + omega_c/Omega) + (M Omega^2/2)(1 - omega_c/Omega) X_- X_+ + hbar Omega ],
/// with the dimensionful products pi_+ pi_- = 2 M Omega hbar (n) and X_- X_+ = 2 l^2 (n - m).
inline OperatorMatrix hamiltonian_from_ladders(const SubspaceSpec& spec, const PhysicalParams& p) {
    const double hbar = p.hbar();
    const double mass = p.mass();
    const double omega = p.omega();
    const double l = p.length();
    const auto pipi = (2.0 * mass * omega * hbar) * ladder_matrix(LadderKind::pi_plus, spec);
    const auto xx = (2.0 * l * l) * (ladder_matrix(LadderKind::x_minus, spec) *
                                     ladder_matrix(LadderKind::x_plus, spec));
    const double ratio = p.omega_c() / omega;
    auto h = (0.5 / (2.0 * mass) * (1.0 + ratio)) * pipi +
             (0.5 * mass * omega * omega / 2.0 * (1.0 - ratio)) * xx +
             (0.5 * hbar * omega) * OperatorMatrix::identity(spec.dim());
    return OperatorMatrix::from_dense(spec.dim(), h.entries());
}

} // namespace lcs
