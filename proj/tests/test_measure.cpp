#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "lcs/bgcs.hpp"
#include "lcs/measure.hpp"
#include "lcs/resolution.hpp"
#include "oracles.hpp"

using namespace lcs;

namespace {

GridOptions fixed_radius(double r) {
    GridOptions opt;
    opt.radius = r;
    return opt;
}

} // namespace

TEST(GaussLegendre, ExactForPolynomials) {
    const auto rule = gauss_legendre(12);
    for (int p = 0; p <= 23; ++p) {
        double s = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            s += rule.weights[i] * std::pow(rule.nodes[i], p);
        const double exact = p % 2 ? 0.0 : 2.0 / (p + 1);
        EXPECT_NEAR(s, exact, 1e-14) << "degree " << p;
    }
    EXPECT_THROW(gauss_legendre(0), UsageError);
}

TEST(QuadratureGrid, OpenPositiveRule) {
    const auto grid = measure_grid(5, 3);
    EXPECT_GE(grid.radius(), 30.0);
    for (std::size_t i = 0; i < grid.radial_nodes().size(); ++i) {
        EXPECT_GT(grid.radial_nodes()[i], 0.0);
        EXPECT_LT(grid.radial_nodes()[i], grid.radius());
        EXPECT_GT(grid.radial_weights()[i], 0.0);
    }
    double total = 0.0;
    for (double w : grid.radial_weights())
        total += w;
    EXPECT_NEAR(total, grid.radius(), 1e-12 * grid.radius());
}

TEST(QuadratureGrid, AngularCountFollowsMode) {
    GridOptions opt;
    opt.n_angular = 16;
    opt.max_mode = 20;
    EXPECT_EQ(QuadratureGrid::build(opt).n_angular(), 88);
    EXPECT_EQ(measure_grid(0, 1).n_angular(), 256);
}

TEST(QuadratureGrid, RadiusGrowsWithDegreeAndLabel) {
    EXPECT_GT(measure_grid(120, 0).radius(), measure_grid(10, 0).radius());
    EXPECT_GT(measure_grid(0, 0, 20.0).radius(), measure_grid(0, 0).radius());
}

TEST(QuadratureGrid, RequireRejectsUnderResolvedUse) {
    const auto grid = measure_grid(3, 2);
    EXPECT_THROW(grid.require(10, 0, "test"), UsageError);
    EXPECT_THROW(grid.require(0, 200, "test"), UsageError);
    EXPECT_NO_THROW(grid.require(3, 2, "test"));
}

TEST(MeasureDensity, OriginValues) {
    EXPECT_TRUE(std::isinf(measure_density(0.0, 0)));
    EXPECT_DOUBLE_EQ(measure_density(0.0, 3), 1.0 / (3.0 * std::numbers::pi));
    EXPECT_THROW(measure_density(-1.0, 0), DomainError);
}

TEST(MeasureDensity, SpecialFunctionOracle) {
    const double expected = 2.0 / std::numbers::pi * oracle::bessel_i(0, 2.0) * oracle::bessel_k(0, 2.0);
    EXPECT_LT(std::abs(measure_density(1.0, 0) / expected - 1.0), 1e-14);
}

TEST(MeasureDensity, RadialDensityTendsToConstant) {
    for (int m = 0; m <= 5; ++m)
        EXPECT_LT(std::abs(measure_density(80.0, m) * 80.0 * 2.0 * std::numbers::pi - 1.0), 1e-2) << m;
}

// The density decays only like 1/(2 pi |z|), so the mass inside radius R
// grows like R and the measure cannot be normalized by itself.
TEST(MeasureDensity, TotalMassGrowsLinearly) {
    for (int m : {0, 3}) {
        const auto one = [](complex) { return complex(1.0); };
        const double inner = integrate(one, m, QuadratureGrid::build(fixed_radius(40.0))).real();
        const double outer = integrate(one, m, QuadratureGrid::build(fixed_radius(80.0))).real();
        EXPECT_NEAR(outer - inner, 40.0, 0.5);
    }
}

TEST(RadialMoment, LowestCase) {
    EXPECT_LT(radial_moment_check(0, 0, measure_grid(1, 0)), 1e-12);
}

TEST(RadialMoment, GammaProduct) {
    const auto grid = measure_grid(9, 0);
    double s = 0.0;
    for (std::size_t i = 0; i < grid.radial_nodes().size(); ++i) {
        const double r = grid.radial_nodes()[i];
        s += grid.radial_weights()[i] * std::pow(r, 9) * specfun::bessel_k(2, 2.0 * r);
    }
    EXPECT_NEAR(4.0 * s, 720.0, 720.0 * 1e-12);
}

TEST(RadialMoment, HighOrderInLogSpace) {
    EXPECT_LT(radial_moment_check(20, 5, measure_grid(36, 0)), 1e-8);
    for (int m = 0; m <= 5; ++m)
        for (int n = m; n <= 20; ++n)
            EXPECT_LT(radial_moment_check(n, m, measure_grid(2 * n - m + 1, 0)), 1e-8) << n << " " << m;
}

TEST(RadialMoment, Domain) {
    EXPECT_THROW(radial_moment_check(1, 3, measure_grid(0, 0)), DomainError);
    EXPECT_THROW(radial_moment_check(10, 0, measure_grid(3, 0)), UsageError);
}

TEST(Integrate, WeightedMonomialMoments) {
    // int d rho (|z|^m / I_m(2|z|)) |z|^{2n} = n! (n+m)!
    for (int m : {0, 2}) {
        for (int n : {0, 1, 4}) {
            const auto grid = measure_grid(2 * n + m + 1, 0);
            const double value = integrate(
                                     [&](complex z) {
                                         const double r = std::abs(z);
                                         return complex(std::exp((2 * n + m) * std::log(r) -
                                                                 specfun::ln_bessel_i(m, 2.0 * r)));
                                     },
                                     m, grid)
                                     .real();
            const double exact = std::tgamma(n + 1.0) * std::tgamma(n + m + 1.0);
            EXPECT_LT(std::abs(value / exact - 1.0), 1e-10) << n << " " << m;
        }
    }
}

TEST(Integrate, BgcsProbabilitiesNormalize) {
    // int |<v|z>|^2 d rho = 1 for each basis state: the diagonal of the resolution of identity.
    const int m = 1;
    const auto grid = identity_grid(m, 6);
    for (int v = 0; v <= 6; ++v) {
        const double value = integrate(
                                 [&](complex z) {
                                     return complex(std::norm(bgcs_amplitudes(z, m, 6)[static_cast<std::size_t>(v)]));
                                 },
                                 m, grid)
                                 .real();
        EXPECT_NEAR(value, 1.0, 1e-10) << v;
    }
}

TEST(Integrate, FirstHarmonicVanishes) {
    const auto grid = measure_grid(0, 1);
    const complex v = integrate([](complex z) { return z / std::abs(z); }, 0, grid);
    EXPECT_LT(std::abs(v), 1e-14 * grid.radius());
}

TEST(Integrate, HarmonicsBelowAngularCount) {
    GridOptions opt;
    opt.n_angular = 24;
    const auto grid = QuadratureGrid::build(opt);
    const double mass = integrate([](complex) { return complex(1.0); }, 2, grid).real();
    for (int k = 1; k < grid.n_angular(); ++k) {
        const complex v = integrate([&](complex z) { return std::pow(z / std::abs(z), k); }, 2, grid);
        EXPECT_LT(std::abs(v), 1e-14 * mass) << k;
    }
}

TEST(Integrate, NonFiniteIntegrandIsReported) {
    const auto grid = measure_grid(0, 0);
    EXPECT_THROW(integrate([](complex) { return complex(std::nan("")); }, 0, grid), EvaluationError);
}

TEST(Integrate, DeterministicAcrossWorkers) {
    const auto grid = measure_grid(5, 3);
    auto f = [](complex z) { return std::exp(-std::norm(z)) * z * z * std::conj(z); };
    const complex a = integrate(f, 1, grid, 1);
    const complex b = integrate(f, 1, grid, 1);
    const complex c = integrate(f, 1, grid, 7);
    EXPECT_EQ(a, b);
    EXPECT_EQ(a, c);
}

TEST(Resolution, IdentityForSeveralSubspaces) {
    EXPECT_LT(resolution_of_identity_check({0, 10}, 8, identity_grid(0, 8)), 1e-6);
    EXPECT_LT(resolution_of_identity_check({4, 8}, 6, identity_grid(4, 6)), 1e-6);
}

TEST(Resolution, OffDiagonalVanishesFromAnglesAlone) {
    GridOptions crude = fixed_radius(6.0);
    crude.points_per_panel = 4;
    crude.grading_levels = 0;
    const auto grid = identity_grid(1, 6, crude);
    const auto mat = identity_matrix_by_quadrature(1, 6, grid);
    for (int r = 0; r <= 6; ++r)
        for (int c = 0; c <= 6; ++c)
            if (r != c) {
                EXPECT_LT(std::abs(mat(r, c)), 1e-12);
            }
    EXPECT_GT(std::abs(mat(6, 6) - 1.0), 1e-6);  // the crude radial rule is visibly off on the diagonal
}

TEST(Resolution, ConvergedUnderPanelDoubling) {
    GridOptions fine;
    fine.panel_width = 1.0;
    const double a = resolution_of_identity_check({2, 10}, 8, identity_grid(2, 8));
    const double b = resolution_of_identity_check({2, 10}, 8, identity_grid(2, 8, fine));
    EXPECT_LT(std::abs(a - b), 1e-8);
}

TEST(Resolution, RejectsOversizedBlock) {
    EXPECT_THROW(resolution_of_identity_check({0, 8}, 7, identity_grid(0, 7)), UsageError);
}
