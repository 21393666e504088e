#include <cmath>

#include <gtest/gtest.h>

#include "lcs/fock.hpp"

using namespace lcs;

namespace {

const SubspaceSpec kSpec{2, 12};

OperatorMatrix ladder(LadderKind k, const SubspaceSpec& s = kSpec) { return ladder_matrix(k, s); }

// Largest entry outside the interior block.
double edge_max(const OperatorMatrix& a, int block) {
    double worst = 0.0;
    for (int r = 0; r < a.dim(); ++r)
        for (int c = 0; c < a.dim(); ++c)
            if (r >= block || c >= block)
                worst = std::max(worst, std::abs(a(r, c)));
    return worst;
}

} // namespace

TEST(PhysicalParams, HybridFrequency) {
    const PhysicalParams p(1.0, 1.0, 1.0, 1.0);
    EXPECT_DOUBLE_EQ(p.omega(), std::sqrt(5.0));
    EXPECT_DOUBLE_EQ(p.omega_minus(), 0.5 * (std::sqrt(5.0) - 1.0));
}

TEST(PhysicalParams, RejectsBadValues) {
    EXPECT_THROW(PhysicalParams(0.0, 1.0, 1.0, 1.0), DomainError);
    EXPECT_THROW(PhysicalParams(1.0, 1.0, -1.0, 1.0), DomainError);
    EXPECT_THROW(PhysicalParams(1.0, 1.0, 0.0, 0.0), DomainError);
    EXPECT_THROW(PhysicalParams(1.0, 1.0, 1.0, 1.0, -2.0), DomainError);
}

TEST(PhysicalParams, ThermalNeedsConfinement) {
    const PhysicalParams p(1.0, 1.0, 0.0, 1.0, 1.0);
    try {
        p.require_thermal();
        FAIL();
    } catch (const DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("Omega > omega_c"), std::string::npos);
    }
}

TEST(SubspaceSpec, Validation) {
    EXPECT_THROW((SubspaceSpec{-1, 10}.validate()), DomainError);
    EXPECT_THROW((SubspaceSpec{0, 3}.validate()), UsageError);
    EXPECT_EQ((SubspaceSpec{3, 10}.dim()), 11);
}

TEST(Ladder, LoweringAnnihilatesGround) {
    const auto km = ladder(LadderKind::k_minus);
    std::vector<complex> e0(static_cast<std::size_t>(kSpec.dim()));
    e0[0] = 1.0;
    for (auto x : km.apply(e0))
        EXPECT_EQ(x, complex{});
}

TEST(Ladder, Su11Relations) {
    const auto kp = ladder(LadderKind::k_plus);
    const auto km = ladder(LadderKind::k_minus);
    const auto k3 = ladder(LadderKind::k3);
    const int block = kSpec.dim() - 1;
    EXPECT_LT(max_abs_diff(commutator(kp, km), -2.0 * k3, block), 1e-12);
    EXPECT_LT(max_abs_diff(commutator(k3, kp), kp, kSpec.dim()), 1e-12);
    EXPECT_LT(max_abs_diff(commutator(k3, km), -1.0 * km, kSpec.dim()), 1e-12);
}

TEST(Ladder, TruncationOnlyBreaksTheLastEntry) {
    const auto kp = ladder(LadderKind::k_plus);
    const auto km = ladder(LadderKind::k_minus);
    const auto k3 = ladder(LadderKind::k3);
    const auto diff = commutator(kp, km) + 2.0 * k3;
    const int block = kSpec.dim() - 2;
    EXPECT_LT(max_abs_diff(diff, OperatorMatrix(kSpec.dim(), 0), block), 1e-12);
    EXPECT_GT(edge_max(diff, block), 1.0);
}

TEST(Ladder, K3Entry) { EXPECT_DOUBLE_EQ(ladder(LadderKind::k3)(4, 4).real(), 5.5); }

TEST(Ladder, AdjointPairs) {
    EXPECT_EQ(ladder(LadderKind::k_plus).adjoint(), ladder(LadderKind::k_minus));
    EXPECT_EQ(ladder(LadderKind::x_plus).adjoint(), ladder(LadderKind::x_minus));
}

TEST(Ladder, CrossSubspaceSurrogatesAreFlagged) {
    EXPECT_TRUE(ladder(LadderKind::pi_plus).cross_subspace());
    EXPECT_TRUE(ladder(LadderKind::x_minus).cross_subspace());
    EXPECT_FALSE(ladder(LadderKind::k_plus).cross_subspace());
    EXPECT_FALSE(ladder(LadderKind::number).cross_subspace());
}

TEST(Ladder, NamesRoundTrip) {
    for (auto k : {LadderKind::pi_plus, LadderKind::x_minus, LadderKind::k3, LadderKind::number})
        EXPECT_EQ(parse_ladder_kind(to_string(k)), k);
    EXPECT_THROW(parse_ladder_kind("k_zero"), UsageError);
}

TEST(Hamiltonian, GroundLevel) {
    const PhysicalParams p(1.0, 1.0, 0.7, 1.3);
    EXPECT_DOUBLE_EQ(hamiltonian_matrix({0, 8}, p)(0, 0).real(), 0.5 * p.omega());
}

TEST(Hamiltonian, LevelFormula) {
    const PhysicalParams p(1.0, 1.0, std::sqrt(3.0) / 2.0, 1.0);  // Omega = 2
    EXPECT_NEAR(landau_energy(3, 1, p), 6.5, 1e-14);
}

TEST(Hamiltonian, LadderAssemblyMatchesFormula) {
    const PhysicalParams p(1.0, 1.0, 1.0, 1.0);  // Omega = sqrt 5
    const SubspaceSpec spec{2, 12};
    EXPECT_LT(max_abs_diff(hamiltonian_from_ladders(spec, p), hamiltonian_matrix(spec, p), spec.dim()), 1e-12);
}

TEST(Hamiltonian, CommutesWithDiagonalGenerators) {
    const PhysicalParams p(1.0, 2.0, 0.3, 1.1);
    const auto h = hamiltonian_matrix(kSpec, p);
    const OperatorMatrix zero(kSpec.dim(), 0);
    EXPECT_EQ(commutator(h, ladder(LadderKind::k3)), zero);
    EXPECT_EQ(commutator(h, ladder(LadderKind::number)), zero);
}

TEST(OperatorMatrix, SelfCommutatorVanishes) {
    const auto m = ladder(LadderKind::k_plus) + 3.0 * ladder(LadderKind::k_minus);
    EXPECT_LT(max_abs_diff(commutator(m, m), OperatorMatrix(kSpec.dim(), 0), kSpec.dim()), 1e-25);
    EXPECT_EQ(commutator(ladder(LadderKind::number), ladder(LadderKind::k3)), OperatorMatrix(kSpec.dim(), 0));
}

TEST(OperatorMatrix, BandIsEnforced) {
    OperatorMatrix a(5, 1);
    EXPECT_THROW(a.set(0, 3, 1.0), UsageError);
    EXPECT_NO_THROW(a.set(0, 3, 0.0));
    EXPECT_EQ((ladder(LadderKind::k_plus) * ladder(LadderKind::k_minus)).band(), 2);
}

TEST(OperatorMatrix, FromDenseDetectsBand) {
    std::vector<complex> d(9);
    d[0 * 3 + 2] = complex(0.0, 1.0);
    EXPECT_EQ(OperatorMatrix::from_dense(3, d).band(), 2);
    EXPECT_EQ(OperatorMatrix::from_dense(3, std::vector<complex>(9)).band(), 0);
}

TEST(OperatorMatrix, ProductMatchesNaive) {
    const auto a = ladder(LadderKind::k_plus) + complex(0.0, 0.5) * ladder(LadderKind::k3);
    const auto b = ladder(LadderKind::k_minus) * ladder(LadderKind::k_minus);
    const auto ab = a * b;
    for (int r = 0; r < a.dim(); ++r)
        for (int c = 0; c < a.dim(); ++c) {
            complex s{};
            for (int k = 0; k < a.dim(); ++k)
                s += a(r, k) * b(k, c);
            EXPECT_LT(std::abs(ab(r, c) - s), 1e-12 * (1.0 + std::abs(s)));
        }
}

TEST(OperatorMatrix, DimensionMismatch) {
    EXPECT_THROW(ladder(LadderKind::k3) * ladder(LadderKind::k3, {2, 9}), UsageError);
    EXPECT_THROW(commutator(ladder(LadderKind::k3), ladder(LadderKind::k3, {2, 9})), UsageError);
    EXPECT_THROW(ladder(LadderKind::k3).apply(std::vector<complex>(3)), UsageError);
}
