#include <gtest/gtest.h>

#include <cmath>

#include "gosc/errors.hpp"
#include "gosc/families.hpp"
#include "gosc/moments.hpp"
#include "gosc/splitting.hpp"

using namespace gosc;

TEST(Splitting, LegendreHalvesAreUniform) {
    const MeasureSplit s = split_measure(measure_for(FamilySpec::legendre()));
    const MomentSequence m = compute_moments(s.plus, 10, 128);
    for (int k = 0; k <= 10; ++k) EXPECT_NEAR(m.values[size_t(k)].to_double(), 1.0 / (k + 1), 1e-15);
    const MomentSequence mm = compute_moments(s.minus, 10, 128);
    for (int k = 0; k <= 10; ++k) EXPECT_NEAR(mm.values[size_t(k)].to_double(), (k % 2 ? -1.0 : 1.0) / (k + 1), 1e-15);
}

TEST(Splitting, LegendreHalfLineSystemIsShiftedLegendre) {
    const MeasureSplit s = split_measure(measure_for(FamilySpec::legendre()));
    const HalfLineSystems h = half_line_systems(s, 8);
    for (int n = 0; n <= 8; ++n) {
        EXPECT_NEAR(h.plus.a[size_t(n)], 0.5, 1e-14);
        EXPECT_NEAR(h.plus.b[size_t(n)], (n + 1.0) / (2.0 * std::sqrt((2.0 * n + 1) * (2.0 * n + 3))), 1e-14);
        EXPECT_NEAR(h.minus.a[size_t(n)], -0.5, 1e-14);
    }
    EXPECT_LT(h.diagonal_mismatch, 1e-10);
    EXPECT_LT(h.b_mismatch, 1e-10);
}

TEST(Splitting, HermiteHalfNormalMean) {
    const MeasureSplit s = split_measure(measure_for(FamilySpec::hermite()));
    const HalfLineSystems h = half_line_systems(s, 6);
    EXPECT_NEAR(h.plus.a[0], 1.0 / std::sqrt(M_PI), 1e-14);
    // second moment 1/2 gives b_0^2 = 1/2 - 1/pi
    EXPECT_NEAR(h.plus.b[0] * h.plus.b[0], 0.5 - 1.0 / M_PI, 1e-14);
}

TEST(Splitting, CombinationChecks) {
    for (const FamilySpec& f : {FamilySpec::legendre(), FamilySpec::hermite(), FamilySpec::chebyshev_u(), FamilySpec::gegenbauer(0.7)}) {
        const MeasureSplit s = split_measure(measure_for(f));
        const HalfLineSystems h = half_line_systems(s, 8);
        const VerificationReport r = verify_combination(s, h, symmetric_system(s, 8), 8);
        EXPECT_TRUE(r.ok()) << f.label();
        for (const char* id : {"split.gram_combined", "split.gram_even_plus", "split.gram_odd_minus"}) {
            ASSERT_NE(r.find(id), nullptr);
            EXPECT_LT(r.find(id)->residual, 1e-8) << f.label() << " " << id;
        }
        EXPECT_LT(r.find("split.minus_diagonal")->residual, 1e-10);
        EXPECT_EQ(r.find("split.gram_combined_half_prefactor")->kind, ItemKind::Informational);
    }
}

TEST(Splitting, CombinedValuesPickSide) {
    const MeasureSplit s = split_measure(measure_for(FamilySpec::legendre()));
    const HalfLineSystems h = half_line_systems(s, 4);
    const std::vector<double> p = combined_values(h, 0.3, 4), q = combined_values(h, -0.3, 4);
    const std::vector<double> ep = evaluate(h.plus, 0.3, 4), em = evaluate(h.minus, -0.3, 4);
    for (size_t n = 0; n < p.size(); ++n) {
        EXPECT_DOUBLE_EQ(p[n], ep[n]);
        EXPECT_DOUBLE_EQ(q[n], em[n]);
    }
}

TEST(Splitting, SymmetricDiscreteMeasure) {
    const MeasureSpec m = MeasureSpec::discrete({-2.0, -1.0, 1.0, 2.0}, {0.1, 0.4, 0.4, 0.1}, true);
    const MeasureSplit s = split_measure(m);
    const MomentSequence mp = compute_moments(s.plus, 2, 128);
    EXPECT_NEAR(mp.values[1].to_double(), 0.8 * 1.0 + 0.2 * 2.0, 1e-15);
}

TEST(Splitting, RejectsBadInput) {
    EXPECT_THROW(split_measure(measure_for(FamilySpec::laguerre(0.0))), InvalidArgument);
    EXPECT_THROW(split_measure(measure_for(FamilySpec::jacobi(0.5, 1.5))), InvalidArgument);
    EXPECT_THROW(split_measure(MeasureSpec::discrete({-1.0, 0.0, 1.0}, {0.25, 0.5, 0.25}, true)), InvalidArgument);
}
