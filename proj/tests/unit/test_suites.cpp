#include <gtest/gtest.h>

#include <cmath>

#include "gosc/errors.hpp"
#include "gosc/suites.hpp"

using namespace gosc;

class AllSuites : public ::testing::TestWithParam<FamilySpec> {};

TEST_P(AllSuites, PassForFamily) {
    SuiteConfig cfg;
    cfg.family = GetParam();
    const VerificationReport r = run_suite("all", cfg);
    for (const VerificationItem& it : r.items)
        if (it.counts()) EXPECT_TRUE(it.pass) << it.id << " residual " << it.residual << " tol " << it.tolerance;
    EXPECT_TRUE(r.ok());
}

INSTANTIATE_TEST_SUITE_P(Families, AllSuites, ::testing::ValuesIn(sample_families()),
                         [](const ::testing::TestParamInfo<FamilySpec>& i) { return "f" + std::to_string(i.index); });

TEST(Suites, NamesIncludeAll) {
    EXPECT_TRUE(is_suite("all"));
    EXPECT_TRUE(is_suite("split"));
    EXPECT_FALSE(is_suite("bogus"));
    EXPECT_EQ(suite_names().size(), 12u);
}

TEST(Suites, RealTIsAViolation) {
    SuiteConfig cfg;
    cfg.t = cplx(1.0, 0.0);
    const VerificationReport r = run_suite("hamiltonian", cfg);
    EXPECT_FALSE(r.ok());
    const VerificationItem* off = r.find("hamiltonian.offdiagonal");
    ASSERT_NE(off, nullptr);
    EXPECT_EQ(off->kind, ItemKind::ExpectedFail);
    EXPECT_FALSE(off->pass);
    const VerificationItem* e = r.find("hamiltonian.entry_2_0");
    ASSERT_NE(e, nullptr);
    EXPECT_TRUE(e->pass);
}

TEST(Suites, ToleranceOverrideTightens) {
    SuiteConfig cfg;
    cfg.family = FamilySpec::legendre();
    cfg.tolerance = 1e-30;
    EXPECT_FALSE(run_suite("ode", cfg).ok());
}

TEST(Suites, ItemsSortedAndNonsymmetricSkipsSplit) {
    SuiteConfig cfg;
    cfg.family = FamilySpec::hermite();
    const VerificationReport r = run_suite("kernel", cfg);
    for (size_t i = 1; i < r.items.size(); ++i) EXPECT_LE(r.items[i - 1].id, r.items[i].id);
    EXPECT_NE(r.find("kernel.mehler_omega_0.9"), nullptr);
    cfg.family = FamilySpec::laguerre(0.5);
    EXPECT_EQ(run_suite("split", cfg).find("split.gram_combined"), nullptr);
}

TEST(Suites, InvalidConfig) {
    SuiteConfig cfg;
    EXPECT_THROW(run_suite("bogus", cfg), InvalidArgument);
    cfg.dim = 1;
    EXPECT_THROW(run_suite("moments", cfg), InvalidArgument);
}
