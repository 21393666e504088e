#pragma once

// The BGCS measure d rho(z) = (2/pi) I_m(2|z|) K_m(2|z|) d^2z and integration
// against it.

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <span>

#include "lcs/errors.hpp"
#include "lcs/quadrature.hpp"
#include "lcs/specfun.hpp"

namespace lcs {

/// Density of d rho with respect to d^2z at radius rho = |z|. Products are
/// formed from exponentially scaled Bessel functions, so the value stays
/// finite for any radius (it tends to 1/(2 pi rho) at large rho).
/// At the origin the density is 1/(pi m) for m >= 1 and diverges
/// logarithmically for m = 0.
inline double measure_density(double rho, int m) {
    if (m < 0)
        throw DomainError("measure_density: m must be non-negative");
    if (!(rho >= 0.0) || !std::isfinite(rho))
        throw DomainError("measure_density: radius must be finite and non-negative");
    if (rho == 0.0)
        return m == 0 ? std::numeric_limits<double>::infinity() : 1.0 / (std::numbers::pi * m);
    const double x = 2.0 * rho;
    return (2.0 / std::numbers::pi) * specfun::bessel_i_scaled(m, x) * specfun::bessel_k_scaled(m, x);
}

inline double measure_density(complex z, int m) { return measure_density(std::abs(z), m); }

/// Integral of f(z) d rho(z) by the tensor rule of the grid. The summation
/// order is fixed (radial node by node, angles in order, pairwise reduction
/// over radial nodes), so repeated runs give bit-identical results.
template <class F>
complex integrate(F&& f, int m, const QuadratureGrid& grid, int workers = 1) {
    if (m < 0)
        throw DomainError("integrate: m must be non-negative");
    const int n_ang = grid.n_angular();
    const double dphi = grid.angular_weight();
    auto node = [&](double r, std::span<complex> out) {
        const double density = measure_density(r, m);
        specfun::CompensatedSum<complex> acc;
        for (int j = 0; j < n_ang; ++j) {
            const double phi = grid.angle(j);
            const complex value = f(std::polar(r, phi));
            if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
                throw EvaluationError("integrand is not finite at z = " + std::to_string(r) + " e^{i " +
                                          std::to_string(phi) + "}",
                                      std::numeric_limits<double>::quiet_NaN());
            acc.add(value);
        }
        out[0] = acc.value() * (density * dphi);
    };
    return integrate_radial(grid, 1, node, workers)[0];
}

/// Relative error of 4 int_0^inf rho^{2n-m+1} K_m(2 rho) d rho against
/// Gamma(n-m+1) Gamma(n+1). The comparison is made on the ratio, so large
/// moments never overflow.
inline double radial_moment_check(int n, int m, const QuadratureGrid& grid) {
    if (m < 0 || n < m)
        throw DomainError("radial_moment_check: need 0 <= m <= n");
    const int power = 2 * n - m + 1;
    grid.require(power, 0, "radial_moment_check");
    const double ln_exact = specfun::ln_factorial(n - m) + specfun::ln_factorial(n);
    const auto& nodes = grid.radial_nodes();
    const auto& weights = grid.radial_weights();
    specfun::CompensatedSum<double> sum;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double r = nodes[i];
        sum.add(weights[i] * std::exp(power * std::log(r) + specfun::ln_bessel_k(m, 2.0 * r) - ln_exact));
    }
    return std::abs(4.0 * sum.value() - 1.0);
}

/// Grid suited to integrands of the form r^degree K_m(2r) times polynomials
/// in the angle up to the given Fourier mode, centred no further than
/// max_label from the origin.
inline QuadratureGrid measure_grid(int degree, int mode, double max_label = 0.0, GridOptions base = {}) {
    base.max_degree = std::max(base.max_degree, degree);
    base.max_mode = std::max(base.max_mode, mode);
    base.max_label = std::max(base.max_label, max_label);
    return QuadratureGrid::build(base);
}

} // namespace lcs
