#pragma once

// Tensor-product quadrature over the complex plane in polar coordinates:
// composite Gauss-Legendre panels in the radius, uniform trapezoid in the
// angle. Radial nodes never touch r = 0, so integrable log singularities of
// K_0 at the origin are never sampled.

#include <algorithm>
#include <cmath>
#include <complex>
#include <exception>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "lcs/errors.hpp"

namespace lcs {

using complex = std::complex<double>;

struct GaussLegendreRule {
    std::vector<double> nodes;   // ascending, on (-1, 1)
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1] by Newton iteration on P_n.
inline GaussLegendreRule gauss_legendre(int n) {
    if (n < 1)
        throw UsageError("gauss_legendre: need at least one node");
    GaussLegendreRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0;
            double p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
            }
            dp = n * (z * p1 - p2) / (z * z - 1.0);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16)
                break;
        }
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        rule.nodes[static_cast<std::size_t>(i)] = -z;
        rule.nodes[static_cast<std::size_t>(n - 1 - i)] = z;
        rule.weights[static_cast<std::size_t>(i)] = w;
        rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    return rule;
}

struct GridOptions {
    std::optional<double> radius;  // explicit cutoff R; otherwise chosen from the tail rule
    double panel_width = 2.0;
    int points_per_panel = 32;
    int n_angular = 256;
    int max_degree = 0;       // integrand ~ r^max_degree e^{-decay_rate r} at large r
    double decay_rate = 2.0;
    double max_label = 0.0;   // largest |z| any integrand is centred on
    int max_mode = 0;         // highest angular Fourier mode that must be resolved
    double tail_tol = 1e-18;  // tail mass relative to the integrand's peak
    int grading_levels = 10;  // geometric refinement of the first panel towards r = 0
    double grading_ratio = 0.2;
    int points_per_graded_panel = 16;
};

class QuadratureGrid {
public:
    static QuadratureGrid build(const GridOptions& opt) {
        if (!(opt.panel_width > 0.0) || opt.points_per_panel < 2 || opt.n_angular < 3)
            throw UsageError("QuadratureGrid: invalid panel or angular settings");
        if (opt.max_degree < 0 || opt.max_mode < 0 || !(opt.decay_rate > 0.0))
            throw UsageError("QuadratureGrid: invalid degree, mode or decay rate");
        if (!(opt.grading_ratio > 0.0 && opt.grading_ratio < 1.0) || opt.grading_levels < 0)
            throw UsageError("QuadratureGrid: invalid grading");

        QuadratureGrid g;
        g.max_degree_ = opt.max_degree;
        g.max_mode_ = opt.max_mode;
        g.max_label_ = opt.max_label;
        g.n_angular_ = std::max(opt.n_angular, 4 * opt.max_mode + 8);

        double radius = opt.radius ? *opt.radius : auto_radius(opt);
        if (!(radius > 0.0))
            throw UsageError("QuadratureGrid: radius must be positive");
        const int panels = std::max(1, static_cast<int>(std::ceil(radius / opt.panel_width - 1e-12)));
        radius = panels * opt.panel_width;
        g.radius_ = radius;

        const auto fine = gauss_legendre(opt.points_per_graded_panel);
        const auto coarse = gauss_legendre(opt.points_per_panel);
        auto add_panel = [&](double a, double b, const GaussLegendreRule& rule) {
            const double mid = 0.5 * (a + b);
            const double half = 0.5 * (b - a);
            for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
                g.nodes_.push_back(mid + half * rule.nodes[k]);
                g.weights_.push_back(half * rule.weights[k]);
            }
        };

        // First panel [0, w] split geometrically: [0, w q^L], ..., [w q, w].
        const double w = opt.panel_width;
        if (opt.grading_levels > 0) {
            double inner = w * std::pow(opt.grading_ratio, opt.grading_levels);
            add_panel(0.0, inner, fine);
            for (int k = opt.grading_levels - 1; k >= 0; --k) {
                const double outer = w * std::pow(opt.grading_ratio, k);
                add_panel(inner, outer, k == 0 ? coarse : fine);
                inner = outer;
            }
        } else {
            add_panel(0.0, w, coarse);
        }
        for (int p = 1; p < panels; ++p)
            add_panel(p * w, (p + 1) * w, coarse);
        return g;
    }

    const std::vector<double>& radial_nodes() const { return nodes_; }
    const std::vector<double>& radial_weights() const { return weights_; }
    double radius() const { return radius_; }
    int n_angular() const { return n_angular_; }
    int max_degree() const { return max_degree_; }
    int max_mode() const { return max_mode_; }
    double max_label() const { return max_label_; }
    double angle(int j) const { return 2.0 * std::numbers::pi * j / n_angular_; }
    double angular_weight() const { return 2.0 * std::numbers::pi / n_angular_; }

    void require(int degree, int mode, const char* who) const {
        if (degree > max_degree_)
            throw UsageError(std::string(who) + ": grid degree " + std::to_string(max_degree_) +
                             " is below the required " + std::to_string(degree));
        if (2 * mode >= n_angular_)
            throw UsageError(std::string(who) + ": grid cannot resolve angular mode " +
                             std::to_string(mode));
    }

    void require_label(double rho, const char* who) const {
        if (rho > max_label_ * (1.0 + 1e-12))
            throw UsageError(std::string(who) + ": grid was built for |z| <= " + std::to_string(max_label_) +
                             ", got " + std::to_string(rho));
    }

    /// Smallest R >= max(30, |z|_max + 15 + p/2) for which the tail of
    /// r^p e^{-kappa r} beyond R is below tail_tol relative to its peak.
    static double auto_radius(const GridOptions& opt) {
        const double p = opt.max_degree;
        const double kappa = opt.decay_rate;
        double r = std::max({30.0, opt.max_label + 15.0 + 0.5 * p, 1.0});
        const double peak_r = std::max(p / kappa, 1e-300);
        const double ln_peak = p > 0 ? p * std::log(peak_r) - kappa * peak_r : 0.0;
        const double target = ln_peak + std::log(opt.tail_tol);
        auto ln_tail = [&](double x) { return (p > 0 ? p * std::log(x) : 0.0) - kappa * x; };
        while (r < peak_r || ln_tail(r) > target)
            r += 1.0;
        // Integrands centred at |z| pick up e^{4 sqrt(r |z|)}-type growth from kernels.
        if (opt.max_label > 0.0) {
            auto ln_kernel_tail = [&](double x) {
                return ln_tail(x) + 4.0 * std::sqrt(x * opt.max_label);
            };
            while (ln_kernel_tail(r) > target)
                r += 1.0;
        }
        return r;
    }

private:
    std::vector<double> nodes_;
    std::vector<double> weights_;
    double radius_ = 0.0;
    int n_angular_ = 0;
    int max_degree_ = 0;
    int max_mode_ = 0;
    double max_label_ = 0.0;
};

namespace detail {

// Sums per-node blocks [lo, hi) pairwise in a fixed tree so the result never
// depends on how nodes were distributed across workers.
inline void pairwise_reduce(const std::vector<complex>& per_node, std::size_t width, std::size_t lo,
                            std::size_t hi, std::span<complex> out) {
    if (hi - lo == 1) {
        for (std::size_t k = 0; k < width; ++k)
            out[k] = per_node[lo * width + k];
        return;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    std::vector<complex> right(width);
    pairwise_reduce(per_node, width, lo, mid, out);
    pairwise_reduce(per_node, width, mid, hi, right);
    for (std::size_t k = 0; k < width; ++k)
        out[k] += right[k];
}

} // namespace detail

/// Radial driver: node_fn(r, out) must write the angular integral of the
/// integrand at radius r (width values). Returns sum_i w_i r_i out_i, the
/// d^2z = r dr dphi integral. Nodes may be processed by several workers; the
/// reduction order is fixed, so results are bit-identical for any worker count.
template <class NodeFn>
std::vector<complex> integrate_radial(const QuadratureGrid& grid, std::size_t width, NodeFn&& node_fn,
                                      int workers = 1) {
    const auto& nodes = grid.radial_nodes();
    const auto& weights = grid.radial_weights();
    const std::size_t count = nodes.size();
    std::vector<complex> per_node(count * width);

    auto run = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            std::span<complex> slot(per_node.data() + i * width, width);
            node_fn(nodes[i], slot);
            const double scale = weights[i] * nodes[i];
            for (auto& v : slot) {
                if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                    throw EvaluationError("integrand is not finite at r = " + std::to_string(nodes[i]),
                                          std::numeric_limits<double>::quiet_NaN());
                v *= scale;
            }
        }
    };

    workers = std::clamp(workers, 1, static_cast<int>(std::max<std::size_t>(count, 1)));
    if (workers == 1) {
        run(0, count);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
        const std::size_t chunk = (count + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const std::size_t begin = std::min(count, w * chunk);
            const std::size_t end = std::min(count, begin + chunk);
            pool.emplace_back([&, w, begin, end] {
                try {
                    run(begin, end);
                } catch (...) {
                    errors[static_cast<std::size_t>(w)] = std::current_exception();
                }
            });
        }
        for (auto& t : pool)
            t.join();
        for (auto& e : errors)
            if (e)
                std::rethrow_exception(e);
    }

    std::vector<complex> total(width);
    if (count > 0)
        detail::pairwise_reduce(per_node, width, 0, count, total);
    return total;
}

/// Integral of f(z) d^2z over the disk of radius R by the tensor rule.
template <class F>
complex integrate_plane(const QuadratureGrid& grid, F&& f, int workers = 1) {
    const int n_ang = grid.n_angular();
    const double dphi = grid.angular_weight();
    auto node = [&](double r, std::span<complex> out) {
        complex acc{};
        for (int j = 0; j < n_ang; ++j) {
            const double phi = grid.angle(j);
            const complex value = f(std::polar(r, phi));
            if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
                throw EvaluationError("integrand is not finite at z = " + std::to_string(r) + " e^{i " +
                                          std::to_string(phi) + "}",
                                      std::numeric_limits<double>::quiet_NaN());
            acc += value;
        }
        out[0] = acc * dphi;
    };
    return integrate_radial(grid, 1, node, workers)[0];
}

} // namespace lcs
