#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "lcs/measure.hpp"
#include "lcs/specfun.hpp"
#include "oracles.hpp"

using namespace lcs;
using namespace lcs::specfun;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

} // namespace

TEST(BesselI, ZeroArgument) {
    EXPECT_EQ(bessel_i(0, 0.0), 1.0);
    EXPECT_EQ(bessel_i(3, 0.0), 0.0);
}

TEST(BesselI, SmallArgumentLeadingTerm) {
    const double x = 1e-4;
    for (int m = 0; m <= 5; ++m)
        EXPECT_LT(rel(bessel_i(m, x), std::pow(x / 2, m) / std::tgamma(m + 1.0)), 1e-7) << "m = " << m;
}

TEST(BesselI, SeriesOracle) {
    EXPECT_LT(rel(bessel_i(1, 2.0), oracle::bessel_i(1, 2.0, 200)), 1e-15);
    for (int m : {0, 2, 7})
        for (double x : {0.3, 4.0, 25.0, 60.0})
            EXPECT_LT(rel(bessel_i(m, x), oracle::bessel_i(m, x)), 1e-13) << m << " " << x;
}

TEST(BesselI, ScaledLeadingAsymptotic) {
    EXPECT_LT(rel(bessel_i_scaled(0, 100.0), 1.0 / std::sqrt(200.0 * std::numbers::pi)), 2e-2);
}

TEST(BesselI, ScaledConsistency) {
    for (int m = 0; m <= 4; ++m)
        EXPECT_LT(rel(bessel_i_scaled(m, 5.0) * std::exp(5.0), bessel_i(m, 5.0)), 1e-12);
}

TEST(BesselI, ScaledOracle) {
    EXPECT_LT(rel(bessel_i_scaled(2, 50.0), oracle::bessel_i(2, 50.0) * std::exp(-50.0)), 1e-13);
}

TEST(BesselI, LargeArgumentsStayFinite) {
    const double ln_i = ln_bessel_i(3, 1500.0);
    EXPECT_TRUE(std::isfinite(ln_i));
    EXPECT_NEAR(ln_i, 1500.0 - 0.5 * std::log(2 * std::numbers::pi * 1500.0), 1e-2);
    EXPECT_LT(std::abs(bessel_i_ratio(0, 1, 800.0) - 1.0), 1e-3);
}

TEST(BesselI, ComplexConjugateSymmetry) {
    for (complex w : {complex(1.0, 2.0), complex(-3.0, 0.5), complex(10.0, -7.0)})
        EXPECT_LT(std::abs(bessel_i(4, std::conj(w)) - std::conj(bessel_i(4, w))), 1e-14 * std::abs(bessel_i(4, w)));
}

TEST(BesselI, ComplexAgreesWithRealAxis) {
    EXPECT_LT(std::abs(bessel_i(2, complex(3.5, 0.0)) - bessel_i(2, 3.5)), 1e-14 * bessel_i(2, 3.5));
}

TEST(BesselI, Recurrence) {
    for (int m = 1; m <= 8; ++m)
        for (double x : {0.5 * m, 2.0 * m, 40.0}) {
            const double lhs = bessel_i(m - 1, x) - bessel_i(m + 1, x);
            EXPECT_LT(rel(lhs, 2.0 * m / x * bessel_i(m, x)), 1e-10) << m << " " << x;
        }
}

TEST(BesselK, Wronskian) {
    for (int m = 0; m <= 5; ++m)
        for (double x : {0.5, 1.0, 3.0, 10.0}) {
            const double w = bessel_i(m, x) * bessel_k(m + 1, x) + bessel_i(m + 1, x) * bessel_k(m, x);
            EXPECT_LT(rel(w, 1.0 / x), 1e-12) << m << " " << x;
        }
}

TEST(BesselK, IntegralRepresentationOracle) {
    EXPECT_LT(rel(bessel_k(0, 1.0), oracle::bessel_k(0, 1.0)), 1e-14);
    for (int m : {1, 3, 6})
        for (double x : {0.05, 1.7, 12.0})
            EXPECT_LT(rel(bessel_k(m, x), oracle::bessel_k(m, x)), 1e-13) << m << " " << x;
}

TEST(BesselK, MellinMomentByRadialQuadrature) {
    // int_0^inf x^3 K_1(2x) dx = 2^2 2^{-4} Gamma(5/2) Gamma(3/2)
    const auto grid = measure_grid(3, 0);
    const auto& r = grid.radial_nodes();
    const auto& w = grid.radial_weights();
    double sum = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i)
        sum += w[i] * std::pow(r[i], 3) * bessel_k(1, 2.0 * r[i]);
    const double exact = std::pow(2.0, 2) * std::pow(2.0, -4) * std::tgamma(2.5) * std::tgamma(1.5);
    EXPECT_LT(rel(sum, exact), 1e-8);
}

TEST(BesselK, ScaledAndLog) {
    EXPECT_LT(rel(bessel_k_scaled(2, 300.0), oracle::bessel_k(2, 300.0) * std::exp(300.0)), 1e-12);
    EXPECT_LT(std::abs(ln_bessel_k(0, 0.7) - std::log(bessel_k(0, 0.7))), 1e-15);
    EXPECT_THROW(bessel_k(0, 0.0), DomainError);
}

TEST(LnFactorial, SmallCases) {
    EXPECT_EQ(ln_factorial(0), 0.0);
    EXPECT_NEAR(ln_factorial(5), std::log(120.0), 1e-15);
}

TEST(LnFactorial, ExactIntegerOracle) {
    EXPECT_LT(rel(ln_factorial(200), oracle::ln_factorial(200)), 1e-15);
    EXPECT_LT(rel(ln_factorial(1000), oracle::ln_factorial(1000)), 1e-14);
    EXPECT_THROW(ln_factorial(-1), DomainError);
}

TEST(Gauss2F1, ReducesToBinomial) {
    EXPECT_LT(rel(gauss_2f1(3.0, 1.0, 3.0, 0.4), 1.0 / 0.6), 1e-12);
    for (double x : {0.1, 0.4, 0.8})
        EXPECT_LT(rel(gauss_2f1(5.0, 2.0, 5.0, x), std::pow(1.0 - x, -2.0)), 1e-12);
}

TEST(Gauss2F1, ZeroArgument) { EXPECT_EQ(gauss_2f1(1.5, -2.0, 3.0, 0.0), 1.0); }

TEST(Gauss2F1, SeriesOracle) {
    EXPECT_LT(rel(gauss_2f1(4.0, 2.0, 3.0, 0.3), oracle::hyp2f1(4.0, 2.0, 3.0, 0.3)), 1e-14);
}

TEST(Gauss2F1, RejectsOutsideDisc) {
    EXPECT_THROW(gauss_2f1(1.0, 1.0, 2.0, 1.0), DomainError);
    EXPECT_THROW(gauss_2f1(1.0, 1.0, -2.0, 0.5), DomainError);
}

TEST(Gauss2F1, ReportsNonConvergence) {
    SeriesControl ctl;
    ctl.max_terms = 5;
    try {
        gauss_2f1(3.0, 2.0, 1.0, 0.99, ctl);
        FAIL() << "expected EvaluationError";
    } catch (const EvaluationError& e) {
        EXPECT_GT(e.partial_estimate(), 1.0);
    }
}

TEST(BesselMomentSum, ZeroIsBesselI) {
    EXPECT_LT(rel(bessel_moment_sum(0, 1.3), bessel_i(0, 2.6)), 1e-12);
}

TEST(BesselMomentSum, ExtendedPrecisionOracle) {
    EXPECT_LT(rel(bessel_moment_sum(2, 0.7), oracle::moment_sum(2, 2, 0.7)), 1e-14);
    EXPECT_LT(rel(bessel_moment_sum(3, 1, 4.0), oracle::moment_sum(3, 1, 4.0)), 1e-13);
}

TEST(BesselMomentSum, GivesMeanK3) {
    const double r = 2.0;
    const int m = 3;
    const double via_s = bessel_moment_sum(1, m, r) / bessel_moment_sum(0, m, r) + 0.5 * (m + 1);
    const double closed = r * bessel_i(m + 1, 2 * r) / bessel_i(m, 2 * r) + 0.5 * (m + 1);
    EXPECT_LT(rel(via_s, closed), 1e-10);
}

TEST(CompensatedSum, RecoversCancelledBits) {
    CompensatedSum<double> s;
    s.add(1.0);
    for (int i = 0; i < 1000; ++i)
        s.add(1e-17);
    s.add(-1.0);
    EXPECT_NEAR(s.value(), 1e-14, 1e-26);
}
