#pragma once

// Integer-order modified Bessel functions, log-factorials and the Gauss
// hypergeometric series. Everything here is pure; no function keeps state
// beyond the immutable log-factorial table.

#include <array>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <string>
#include <type_traits>
#include <utility>

#include "lcs/errors.hpp"

namespace lcs::specfun {

using complex = std::complex<double>;

struct SeriesControl {
    double rel_tol = 1e-15;
    int max_terms = 4000;

    void validate() const {
        if (!(rel_tol > 0.0 && rel_tol < 1e-6))
            throw UsageError("SeriesControl: rel_tol must lie in (0, 1e-6)");
        if (max_terms < 64)
            throw UsageError("SeriesControl: max_terms must be at least 64");
    }
};

/// Neumaier-compensated running sum. Complex values are compensated
/// componentwise.
template <class T>
class CompensatedSum {
public:
    void add(T x) {
        if constexpr (std::is_same_v<T, complex>) {
            add_real(re_, cre_, x.real());
            add_real(im_, cim_, x.imag());
        } else {
            add_real(re_, cre_, x);
        }
    }

    T value() const {
        if constexpr (std::is_same_v<T, complex>)
            return {re_ + cre_, im_ + cim_};
        else
            return re_ + cre_;
    }

private:
    static void add_real(double& sum, double& comp, double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }

    double re_ = 0.0, cre_ = 0.0;
    double im_ = 0.0, cim_ = 0.0;
};

namespace detail {

inline constexpr int kExactFactorialLimit = 256;

inline const std::array<double, kExactFactorialLimit + 1>& ln_factorial_table() {
    static const auto table = [] {
        std::array<double, kExactFactorialLimit + 1> t{};
        CompensatedSum<double> acc;
        t[0] = 0.0;
        for (int n = 1; n <= kExactFactorialLimit; ++n) {
            acc.add(std::log(static_cast<double>(n)));
            t[n] = acc.value();
        }
        return t;
    }();
    return table;
}

[[noreturn]] inline void not_converged(const char* what, int terms, double partial) {
    throw EvaluationError(std::string(what) + ": series did not converge within " +
                              std::to_string(terms) + " terms",
                          partial);
}

inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const complex& x) { return std::abs(x); }

} // namespace detail

/// ln(n!). Exact summation up to n = 256, Stirling series with four
/// correction terms above (absolute error below 1e-20 there).
inline double ln_factorial(long n) {
    if (n < 0)
        throw DomainError("ln_factorial: negative argument");
    if (n <= detail::kExactFactorialLimit)
        return detail::ln_factorial_table()[static_cast<std::size_t>(n)];
    const double x = static_cast<double>(n);
    const double x2 = x * x;
    const double corr = 1.0 / (12.0 * x) - 1.0 / (360.0 * x * x2) +
                        1.0 / (1260.0 * x * x2 * x2) - 1.0 / (1680.0 * x * x2 * x2 * x2);
    return x * std::log(x) - x + 0.5 * std::log(2.0 * std::numbers::pi * x) + corr;
}

/// Entire series sum_{v>=0} w^v / (v! (v+m)!), which equals I_m(2 sqrt(w)) / w^{m/2}
/// without any branch choice. Works for real and complex w.
template <class T>
T bessel_i_reduced(int m, T w, const SeriesControl& ctl = {}) {
    if (m < 0)
        throw DomainError("bessel_i_reduced: negative order");
    T term = T(std::exp(-ln_factorial(m)));
    CompensatedSum<T> sum;
    sum.add(term);
    if (w == T(0))
        return sum.value();
    const double wabs = detail::magnitude(w);
    for (int v = 0; v < ctl.max_terms; ++v) {
        const double denom = static_cast<double>(v + 1) * static_cast<double>(v + m + 1);
        term *= w / denom;
        sum.add(term);
        const bool past_peak = denom > 2.0 * wabs;
        if (past_peak && detail::magnitude(term) <= 0.5 * ctl.rel_tol * detail::magnitude(sum.value()))
            return sum.value();
        if (term == T(0))
            return sum.value();
        if (!std::isfinite(detail::magnitude(term)))
            throw EvaluationError("bessel_i_reduced: overflow", std::numeric_limits<double>::infinity());
    }
    detail::not_converged("bessel_i_reduced", ctl.max_terms, detail::magnitude(sum.value()));
}

/// I_m(w) for complex w by the ascending series (no asymptotics).
inline complex bessel_i(int m, complex w, const SeriesControl& ctl = {}) {
    if (m < 0)
        throw DomainError("bessel_i: negative order");
    complex half_pow(1.0, 0.0);
    const complex half = 0.5 * w;
    for (int k = 0; k < m; ++k)
        half_pow *= half;
    return half_pow * bessel_i_reduced<complex>(m, half * half, ctl);
}

namespace detail {

// Hankel expansion of e^{-x} I_m(x) sqrt(2 pi x); valid for x >> m^2.
inline double bessel_i_asymptotic_factor(int m, double x) {
    const double mu = 4.0 * m * m;
    double term = 1.0;
    CompensatedSum<double> sum;
    sum.add(term);
    for (int k = 1; k < 60; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= -(mu - odd * odd) / (k * 8.0 * x);
        sum.add(term);
        if (std::abs(term) < 1e-17 * std::abs(sum.value()))
            break;
    }
    return sum.value();
}

inline bool use_asymptotic_i(int m, double x) {
    return x > 700.0 && static_cast<double>(m) * m < x / 10.0;
}

} // namespace detail

/// ln I_m(x) for x > 0. The ascending series is summed with periodic
/// rescaling so nothing overflows.
inline double ln_bessel_i(int m, double x, const SeriesControl& ctl = {}) {
    if (m < 0)
        throw DomainError("ln_bessel_i: negative order");
    if (!(x > 0.0))
        throw DomainError("ln_bessel_i: argument must be positive");
    if (detail::use_asymptotic_i(m, x))
        return x - 0.5 * std::log(2.0 * std::numbers::pi * x) +
               std::log(detail::bessel_i_asymptotic_factor(m, x));

    constexpr double kRescale = 1e200;
    const double ln_rescale = std::log(kRescale);
    const double y = 0.25 * x * x;
    double term = 1.0;
    double log_scale = 0.0;
    CompensatedSum<double> sum;
    sum.add(term);
    for (int v = 0; v < ctl.max_terms; ++v) {
        const double denom = static_cast<double>(v + 1) * static_cast<double>(v + m + 1);
        term *= y / denom;
        sum.add(term);
        if (term > kRescale) {
            const double s = sum.value() / kRescale;
            sum = CompensatedSum<double>{};
            sum.add(s);
            term /= kRescale;
            log_scale += ln_rescale;
        }
        if (denom > 2.0 * y && term <= 0.5 * ctl.rel_tol * sum.value())
            return m * std::log(0.5 * x) - ln_factorial(m) + log_scale + std::log(sum.value());
    }
    detail::not_converged("ln_bessel_i", ctl.max_terms, sum.value());
}

/// I_m(x) for real x. Ascending series for |x| <= 700, log form above, so
/// the result overflows to infinity beyond |x| ~ 710 instead of failing.
inline double bessel_i(int m, double x, const SeriesControl& ctl = {}) {
    if (m < 0)
        throw DomainError("bessel_i: negative order");
    if (std::abs(x) > 700.0) {
        const double v = std::exp(ln_bessel_i(m, std::abs(x), ctl));
        return (x < 0.0 && m % 2 == 1) ? -v : v;
    }
    double half_pow = 1.0;
    for (int k = 0; k < m; ++k)
        half_pow *= 0.5 * x;
    return half_pow * bessel_i_reduced<double>(m, 0.25 * x * x, ctl);
}

/// e^{-x} I_m(x) for x > 0.
inline double bessel_i_scaled(int m, double x, const SeriesControl& ctl = {}) {
    if (!(x > 0.0))
        throw DomainError("bessel_i_scaled: argument must be positive");
    if (x <= 700.0)
        return std::exp(-x) * bessel_i(m, x, ctl);
    return std::exp(ln_bessel_i(m, x, ctl) - x);
}

/// I_{m+k}(x) / I_m(x) for x >= 0 (zero at x = 0 when k > 0).
inline double bessel_i_ratio(int m, int k, double x, const SeriesControl& ctl = {}) {
    if (x == 0.0)
        return k == 0 ? 1.0 : 0.0;
    if (x < 0.0)
        throw DomainError("bessel_i_ratio: argument must be non-negative");
    if (x <= 700.0) {
        const double num = bessel_i(m + k, x, ctl);
        const double den = bessel_i(m, x, ctl);
        if (num > 0.0 && den > 0.0 && std::isfinite(num) && std::isfinite(den))
            return num / den;
    }
    return std::exp(ln_bessel_i(m + k, x, ctl) - ln_bessel_i(m, x, ctl));
}

namespace detail {

// K_0(x), K_1(x) for 0 < x <= 2 from the logarithmic ascending series.
inline std::pair<double, double> bessel_k01_series(double x) {
    constexpr double euler_gamma = std::numbers::egamma;
    const double y = 0.25 * x * x;
    const double lnh = std::log(0.5 * x);

    // K0 = -(ln(x/2) + gamma) I0 + sum_{k>=1} H_k y^k / (k!)^2
    CompensatedSum<double> i0, k0tail;
    // K1 = 1/x + ln(x/2) I1 - (x/4) sum_k [psi(k+1) + psi(k+2)] y^k / (k! (k+1)!)
    CompensatedSum<double> i1, k1tail;

    double t0 = 1.0;      // y^k / (k!)^2
    double t1 = 1.0;      // y^k / (k! (k+1)!)
    double harmonic = 0.0; // H_k
    i0.add(t0);
    i1.add(t1);
    k1tail.add((-2.0 * euler_gamma + 1.0) * t1);
    for (int k = 1; k < 200; ++k) {
        t0 *= y / (static_cast<double>(k) * k);
        t1 *= y / (static_cast<double>(k) * (k + 1));
        harmonic += 1.0 / k;
        const double psi_k1 = -euler_gamma + harmonic;
        const double psi_k2 = psi_k1 + 1.0 / (k + 1);
        i0.add(t0);
        k0tail.add(harmonic * t0);
        i1.add(t1);
        k1tail.add((psi_k1 + psi_k2) * t1);
        if (t0 < 1e-18 * i0.value() && t1 < 1e-18 * i1.value())
            break;
    }
    const double bessel_i1 = 0.5 * x * i1.value();
    const double k0 = -(lnh + euler_gamma) * i0.value() + k0tail.value();
    const double k1 = 1.0 / x + lnh * bessel_i1 - 0.25 * x * k1tail.value();
    return {k0, k1};
}

// e^x K_0(x), e^x K_1(x) for x > 2 by Steed's method on the second
// continued fraction (Temme's normalisation).
inline std::pair<double, double> bessel_k01_scaled_cf(double x) {
    constexpr double eps = 1e-17;
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d;
    double delh = d;
    double q1 = 0.0;
    double q2 = 1.0;
    const double a1 = 0.25;
    double q = a1;
    double c = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 1; i < 10000; ++i) {
        a -= 2.0 * i;
        c = -a * c / (i + 1.0);
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::abs(dels / s) < eps)
            break;
    }
    h = a1 * h;
    const double k0 = std::sqrt(std::numbers::pi / (2.0 * x)) / s;
    const double k1 = k0 * (x + 0.5 - h) / x;
    return {k0, k1};
}

inline double k_upward(int m, double k0, double k1, double x) {
    if (m == 0)
        return k0;
    double km1 = k0;
    double k = k1;
    for (int j = 1; j < m; ++j) {
        const double next = km1 + (2.0 * j / x) * k;
        km1 = k;
        k = next;
    }
    return k;
}

} // namespace detail

/// e^{x} K_m(x) for x > 0.
inline double bessel_k_scaled(int m, double x) {
    if (m < 0)
        throw DomainError("bessel_k_scaled: negative order");
    if (!(x > 0.0))
        throw DomainError("bessel_k_scaled: argument must be positive");
    auto [k0, k1] = x <= 2.0 ? detail::bessel_k01_series(x) : detail::bessel_k01_scaled_cf(x);
    if (x <= 2.0) {
        const double e = std::exp(x);
        k0 *= e;
        k1 *= e;
    }
    return detail::k_upward(m, k0, k1, x);
}

/// K_m(x) for x > 0, integer order via K_0, K_1 and upward recurrence.
inline double bessel_k(int m, double x) {
    if (m < 0)
        throw DomainError("bessel_k: negative order");
    if (!(x > 0.0))
        throw DomainError("bessel_k: argument must be positive");
    if (x <= 2.0) {
        auto [k0, k1] = detail::bessel_k01_series(x);
        return detail::k_upward(m, k0, k1, x);
    }
    return bessel_k_scaled(m, x) * std::exp(-x);
}

/// ln K_m(x) for x > 0, safe against underflow at large x.
inline double ln_bessel_k(int m, double x) {
    return std::log(bessel_k_scaled(m, x)) - x;
}

/// Gauss hypergeometric 2F1(a, b; c; x) for |x| < 1 by the ascending series.
inline double gauss_2f1(double a, double b, double c, double x, const SeriesControl& ctl = {}) {
    if (!(std::abs(x) < 1.0))
        throw DomainError("gauss_2f1: requires |x| < 1");
    if (c <= 0.0 && c == std::floor(c))
        throw DomainError("gauss_2f1: c must not be a non-positive integer");
    const double monotone_from = std::max(std::abs(a), std::abs(b)) * std::abs(x) / (1.0 - std::abs(x));
    double term = 1.0;
    CompensatedSum<double> sum;
    sum.add(term);
    if (x == 0.0)
        return 1.0;
    for (int k = 0; k < ctl.max_terms; ++k) {
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * x;
        sum.add(term);
        if (term == 0.0)
            return sum.value();
        if (k > monotone_from && std::abs(term) <= 0.5 * ctl.rel_tol * std::abs(sum.value()))
            return sum.value();
    }
    detail::not_converged("gauss_2f1", ctl.max_terms, sum.value());
}

/// sum_v (x^2)^v v^power / (v! (v+order)!) for x > 0. With power = order = n this
/// is the moment sum S_n used to evaluate su(1,1) generator averages.
inline double bessel_moment_sum(int power, int order, double x, const SeriesControl& ctl = {}) {
    if (power < 0 || order < 0)
        throw DomainError("bessel_moment_sum: negative index");
    if (!(x > 0.0))
        throw DomainError("bessel_moment_sum: argument must be positive");
    const double y = x * x;
    double base = std::exp(-ln_factorial(order));
    CompensatedSum<double> sum;
    if (power == 0)
        sum.add(base);
    for (int v = 0; v < ctl.max_terms; ++v) {
        const double denom = static_cast<double>(v + 1) * static_cast<double>(v + order + 1);
        base *= y / denom;
        const double term = base * std::pow(static_cast<double>(v + 1), power);
        sum.add(term);
        if (denom > 4.0 * y && v > 2 * power && term <= 0.5 * ctl.rel_tol * sum.value())
            return sum.value();
        if (base == 0.0)
            return sum.value();
    }
    detail::not_converged("bessel_moment_sum", ctl.max_terms, sum.value());
}

inline double bessel_moment_sum(int n, double x, const SeriesControl& ctl = {}) {
    return bessel_moment_sum(n, n, x, ctl);
}

} // namespace lcs::specfun
