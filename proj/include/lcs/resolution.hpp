#pragma once

// Quadrature check of the resolution of identity
//   int |z>_m <z| d rho(z) = 1 on h_m.

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "lcs/bgcs.hpp"
#include "lcs/errors.hpp"
#include "lcs/fock.hpp"
#include "lcs/measure.hpp"

namespace lcs {

/// Grid adequate for resolution_of_identity_check at (m, n_check).
inline QuadratureGrid identity_grid(int m, int n_check, GridOptions base = {}) {
    return measure_grid(2 * n_check + m + 1, 2 * n_check, 0.0, base);
}

/// The (n_check+1)^2 matrix M_{vu} = int a_v(z) conj(a_u(z)) d rho(z).
inline OperatorMatrix identity_matrix_by_quadrature(int m, int n_check, const QuadratureGrid& grid,
                                                    int workers = 1) {
    if (m < 0 || n_check < 0)
        throw DomainError("identity_matrix_by_quadrature: m and n_check must be non-negative");
    grid.require(2 * n_check + m + 1, 2 * n_check, "resolution_of_identity_check");
    const int dim = n_check + 1;
    const std::size_t width = static_cast<std::size_t>(dim) * dim;
    const int n_ang = grid.n_angular();
    const double dphi = grid.angular_weight();
    auto node = [&](double r, std::span<complex> out) {
        std::fill(out.begin(), out.end(), complex{});
        const double scale = measure_density(r, m) * dphi;
        for (int j = 0; j < n_ang; ++j) {
            const auto a = bgcs_amplitudes(std::polar(r, grid.angle(j)), m, n_check);
            for (int v = 0; v < dim; ++v)
                for (int u = 0; u < dim; ++u)
                    out[static_cast<std::size_t>(v * dim + u)] +=
                        a[static_cast<std::size_t>(v)] * std::conj(a[static_cast<std::size_t>(u)]);
        }
        for (auto& x : out)
            x *= scale;
    };
    return OperatorMatrix::from_dense(dim, integrate_radial(grid, width, node, workers));
}

/// max |M - 1| over the (n_check+1)^2 block.
inline double resolution_of_identity_check(const SubspaceSpec& spec, int n_check, const QuadratureGrid& grid,
                                           int workers = 1) {
    spec.validate();
    if (n_check < 0 || n_check > spec.depth - 2)
        throw UsageError("resolution_of_identity_check: need 0 <= n_check <= depth - 2");
    const auto mat = identity_matrix_by_quadrature(spec.m, n_check, grid, workers);
    return max_abs_diff(mat, OperatorMatrix::identity(n_check + 1), n_check + 1);
}

} // namespace lcs
