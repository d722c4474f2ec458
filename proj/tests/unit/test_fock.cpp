#include <gtest/gtest.h>

#include <cmath>

#include "gosc/errors.hpp"
#include "gosc/families.hpp"
#include "gosc/fock.hpp"

using namespace gosc;

namespace {
const cplx I1(0.0, 1.0);
}

TEST(Fock, PositionMatrixIsJacobiMatrix) {
    const RecurrenceCoefficients c = family_coefficients(FamilySpec::laguerre(0.5), 10);
    const FockOperator X = position_operator(c, 8);
    for (int n = 0; n + 1 < 8; ++n) {
        EXPECT_DOUBLE_EQ(X(n, n + 1).real(), c.b[static_cast<size_t>(n)]);
        EXPECT_DOUBLE_EQ(X(n + 1, n).real(), c.b[static_cast<size_t>(n)]);
        EXPECT_DOUBLE_EQ(X(n, n).real(), c.a[static_cast<size_t>(n)]);
    }
    EXPECT_EQ(X.valid_cols, 6);
}

TEST(Fock, DistinguishedMomentumAction) {
    // P psi_n = i (b_{n-1} psi_{n-1} - b_n psi_{n+1})
    const RecurrenceCoefficients c = family_coefficients(FamilySpec::legendre(), 12);
    const FockOperator P = momentum_operator(c, 10, kDistinguishedT);
    for (int n = 0; n <= P.valid_cols; ++n) {
        if (n > 0) EXPECT_NEAR(std::abs(P(n - 1, n) - I1 * c.b[static_cast<size_t>(n - 1)]), 0.0, 1e-15);
        EXPECT_NEAR(std::abs(P(n + 1, n) + I1 * c.b[static_cast<size_t>(n)]), 0.0, 1e-15);
    }
}

TEST(Fock, MomentumNeedsUnimodularT) {
    const RecurrenceCoefficients c = family_coefficients(FamilySpec::hermite(), 10);
    EXPECT_THROW(momentum_operator(c, 8, cplx(0.5, 0.0)), InvalidArgument);
}

TEST(Fock, HermiteHamiltonianIsDiagonal) {
    const RecurrenceCoefficients c = family_coefficients(FamilySpec::hermite(), 64);
    const FockOperator H = hamiltonian(c, 64, cplx(0.0, -1.0));
    EXPECT_LT(valid_offdiagonal(H), 1e-12);
    for (int n = 0; n <= H.valid_cols; ++n) EXPECT_NEAR(H(n, n).real(), 2.0 * n + 1.0, 1e-12 * (2 * n + 1));
}

TEST(Fock, HamiltonianAtRealTIsNotDiagonal) {
    const RecurrenceCoefficients c = family_coefficients(FamilySpec::hermite(), 10);
    const FockOperator H = hamiltonian(c, 10, cplx(1.0, 0.0));
    EXPECT_NEAR(std::abs(H(2, 0) - std::sqrt(2.0)), 0.0, 1e-14);
    EXPECT_GT(valid_offdiagonal(H), 1.0);
}

TEST(Fock, ProductValidityShrinksByBandwidth) {
    const RecurrenceCoefficients c = family_coefficients(FamilySpec::hermite(), 20);
    const FockOperator X = position_operator(c, 16);
    const FockOperator X2 = X * X, X3 = X2 * X;
    EXPECT_EQ(X2.valid_cols, X.valid_cols - 1);
    EXPECT_EQ(X3.valid_cols, X.valid_cols - 2);
    EXPECT_EQ(X3.bandwidth, 3);
}

TEST(Fock, LadderActions) {
    const RecurrenceCoefficients c = family_coefficients(FamilySpec::gegenbauer(0.7), 12);
    const Ladder L = ladder_operators(c, 10);
    for (int n = 0; n + 1 < 10; ++n) {
        EXPECT_NEAR(L.plus(n + 1, n).real(), std::sqrt(2.0) * c.b[static_cast<size_t>(n)], 1e-15);
        EXPECT_NEAR(L.minus(n, n + 1).real(), std::sqrt(2.0) * c.b[static_cast<size_t>(n)], 1e-15);
    }
    EXPECT_THROW(ladder_operators(family_coefficients(FamilySpec::laguerre(0.0), 12), 10), InvalidArgument);
}

TEST(Fock, EnergyLevelsFormula) {
    const RecurrenceCoefficients c = family_coefficients(FamilySpec::legendre(), 5);
    const std::vector<double> l = energy_levels(c, 3);
    EXPECT_NEAR(l[0], 2.0 / 3.0, 1e-15);
    EXPECT_NEAR(l[1], 1.2, 1e-15);
}

TEST(Fock, OscillatorAlgebraHoldsForSymmetricFamilies) {
    for (const FamilySpec& f : sample_families()) {
        if (!f.symmetric()) continue;
        const VerificationReport r = verify_oscillator_algebra(family_coefficients(f, 64), 64);
        EXPECT_TRUE(r.ok()) << f.label();
        EXPECT_NE(r.find("algebra.commutator_B"), nullptr);
    }
}

TEST(Fock, HermiteAndQOscillatorRelations) {
    const VerificationReport h =
        verify_oscillator_algebra(family_coefficients(FamilySpec::hermite(), 64), 64, AlgebraRelation{1.0, [](int) { return 0.5; }});
    ASSERT_NE(h.find("algebra.deformed_relation"), nullptr);
    EXPECT_LT(h.find("algebra.deformed_relation")->residual, 1e-12);
    const double q = 1.1;
    // [n+1]_q - q [n]_q = q^-n for the symmetric bracket
    const VerificationReport r = verify_oscillator_algebra(deformation_coefficients(DeformationFunction::q_bracket(q), 64), 64,
                                                           AlgebraRelation{q, [q](int n) { return 0.5 * std::pow(q, -n); }});
    EXPECT_TRUE(r.ok());
    const VerificationReport wrong = verify_oscillator_algebra(deformation_coefficients(DeformationFunction::q_bracket(q), 64), 64,
                                                               AlgebraRelation{q, [](int) { return 0.5; }});
    EXPECT_FALSE(wrong.ok());
}

TEST(Fock, LinearDeformationIsHermite) {
    const RecurrenceCoefficients d = deformation_coefficients(DeformationFunction::linear(), 20);
    const RecurrenceCoefficients h = family_coefficients(FamilySpec::hermite(), 20);
    for (size_t n = 0; n <= 20; ++n) EXPECT_NEAR(d.b[n], h.b[n], 1e-14);
}

TEST(Fock, SuPhi2Relations) {
    const DeformationFunction lin = DeformationFunction::linear();
    EXPECT_TRUE(verify_su_phi2(lin, 4, deformation_coefficients(lin, 4), 1e-12).ok());
    const DeformationFunction qb = DeformationFunction::q_bracket(1.1);
    const VerificationReport r = verify_su_phi2(qb, 8, deformation_coefficients(qb, 8), 1e-10);
    EXPECT_TRUE(r.ok());
    const VerificationItem* lit = r.find("su2.jplus_jminus_literal_2B(Jz)");
    ASSERT_NE(lit, nullptr);
    EXPECT_EQ(lit->kind, ItemKind::Informational);
    EXPECT_GT(lit->residual, 1e-3);
    EXPECT_THROW(su_phi2_generators(qb, 4, deformation_coefficients(lin, 4)), InvalidArgument);
}

TEST(Fock, TensorCommutatorOfCommutingFactors) {
    const RecurrenceCoefficients c = family_coefficients(FamilySpec::hermite(), 6);
    const FockOperator X = position_operator(c, 5), Id = identity_operator(5);
    const TensorOperator A = kron(X, Id), B = kron(Id, X);
    EXPECT_LT(commutator(A, B).matrix.cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Fock, FunctionalEquation) {
    const auto grid = square_grid(-2.0, 2.0, 20);
    EXPECT_EQ(grid.size(), 400u);
    EXPECT_LT(check_functional_equation(DeformationFunction::sinh_family(0.3), grid), 1e-13);
    EXPECT_LT(check_functional_equation(DeformationFunction::linear(), grid), 1e-13);
    EXPECT_GT(check_functional_equation(DeformationFunction::from([](double x) { return x * x; }), grid), 0.5);
}

TEST(Fock, TildeHamiltonianIsDiagonal) {
    for (const FamilySpec& f : {FamilySpec::laguerre(2.0), FamilySpec::jacobi(0.5, 1.5)}) {
        const RecurrenceCoefficients c = family_coefficients(f, 64);
        const Tilde t = tilde_operators(c, 64);
        EXPECT_LT(valid_offdiagonal(t.H), 1e-10) << f.label();
        const std::vector<double> l = energy_levels(c, 64);
        for (int n = 0; n <= t.H.valid_cols; ++n) EXPECT_NEAR(t.H(n, n).real(), l[static_cast<size_t>(n)], 1e-12 * l[static_cast<size_t>(n)]);
    }
}
