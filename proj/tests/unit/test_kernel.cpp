#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <string>

#include "gosc/errors.hpp"
#include "gosc/families.hpp"
#include "gosc/kernel.hpp"

using namespace gosc;

namespace {

// orthonormal Hermite under exp(-x^2)/sqrt(pi), from x psi_n = b_{n-1} psi_{n-1} + b_n psi_{n+1}
double hermite_sum(double x, double y, double w, int terms) {
    double px0 = 1.0, py0 = 1.0, px1 = std::sqrt(2.0) * x, py1 = std::sqrt(2.0) * y;
    double s = 1.0 + w * px1 * py1, wn = w;
    for (int n = 1; n + 1 < terms; ++n) {
        const double bn = std::sqrt((n + 1) / 2.0), bp = std::sqrt(n / 2.0);
        const double px2 = (x * px1 - bp * px0) / bn, py2 = (y * py1 - bp * py0) / bn;
        wn *= w;
        s += wn * px2 * py2;
        px0 = px1, px1 = px2, py0 = py1, py1 = py2;
    }
    return s;
}

KernelSpec spec(const FamilySpec& f, cplx t, int N) {
    KernelSpec k;
    k.coeffs = family_coefficients(f, N);
    k.t = t;
    k.N = N;
    return k;
}

}  // namespace

TEST(Kernel, MehlerAgainstIndependentSumAndClosedForm) {
    const KernelSpec k = spec(FamilySpec::hermite(), cplx(0.6, 0.0), 200);
    for (double x : {-1.5, -0.2, 0.7, 2.0})
        for (double y : {-1.0, 0.3, 1.9}) {
            const double own = hermite_sum(x, y, 0.6, 200);
            const double closed = mehler_closed_form(x, y, 0.6);
            EXPECT_NEAR(own, closed, 1e-10 * std::abs(closed) + 1e-12);
            EXPECT_NEAR(std::abs(poisson_kernel(k, x, y).value - own), 0.0, 1e-10 * std::abs(own) + 1e-12);
        }
}

TEST(Kernel, ComplexClosedFormMatchesRealBranch) {
    EXPECT_NEAR(std::abs(mehler_closed_form(0.4, -0.8, cplx(0.3, 0.0)) - mehler_closed_form(0.4, -0.8, 0.3)), 0.0, 1e-15);
}

TEST(Kernel, FourierLimitOfWeightedMehler) {
    for (double x : {-1.0, 0.5})
        for (double y : {0.2, 1.7}) {
            const cplx expect = std::exp(cplx(0.0, -x * y)) / std::sqrt(2.0 * M_PI);
            EXPECT_NEAR(std::abs(mehler_weighted(x, y, cplx(0.0, -1.0)) - expect), 0.0, 1e-13);
            EXPECT_NEAR(std::abs(hermite_fourier_kernel(x, y) - expect), 0.0, 1e-15);
        }
}

TEST(Kernel, OmegaZeroIsOne) {
    for (const FamilySpec& f : sample_families()) {
        const KernelSpec k = spec(f, cplx(0.0, 0.0), 10);
        EXPECT_NEAR(std::abs(poisson_kernel(k, 0.3, 0.4).value - 1.0), 0.0, 1e-15) << f.label();
    }
}

TEST(Kernel, ChebyshevPoisson) {
    const double r = 0.5, th = 0.7, ph = 2.1;
    double own = 1.0;
    for (int n = 1; n < 120; ++n) own += 2.0 * std::pow(r, n) * std::cos(n * th) * std::cos(n * ph);
    EXPECT_NEAR(chebyshev_poisson_closed_form(th, ph, r), own, 1e-13);
    const KernelSpec k = spec(FamilySpec::chebyshev_t(), cplx(r, 0.0), 120);
    EXPECT_NEAR(poisson_kernel(k, std::cos(th), std::cos(ph)).value.real(), own, 1e-12);
}

TEST(Kernel, TermsForTolerance) {
    const KernelSpec k = spec(FamilySpec::hermite(), cplx(0.5, 0.0), 200);
    const int n = kernel_terms_for(k, 1.0, 1.0, 1e-12);
    EXPECT_GT(n, 10);
    EXPECT_LE(n, 200);
}

TEST(Kernel, IntertwiningRelations) {
    for (const FamilySpec& f : {FamilySpec::hermite(), FamilySpec::laguerre(1.0), FamilySpec::jacobi(0.5, -0.3)}) {
        const VerificationReport r = verify_intertwining(family_coefficients(f, 40), 32);
        EXPECT_TRUE(r.ok()) << f.label();
        EXPECT_NE(r.find("intertwining.hamiltonian_fourier"), nullptr);
    }
}

TEST(Kernel, DiscreteRoundTrip) {
    EXPECT_LT(kernel_round_trip_error(family_coefficients(FamilySpec::hermite(), 40), 40, cplx(0.0, -1.0), 5), 1e-9);
    EXPECT_LT(kernel_round_trip_error(family_coefficients(FamilySpec::legendre(), 40), 40, cplx(0.0, 1.0), 5), 1e-9);
}

TEST(Kernel, FourierFockMatrixIsUnitary) {
    const FockOperator F = fourier_fock_matrix(cplx(0.0, -1.0), 8);
    EXPECT_LT((F.matrix * F.matrix.adjoint() - Eigen::MatrixXcd::Identity(8, 8)).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_NEAR(std::abs(F(3, 3) - cplx(0.0, 1.0)), 0.0, 1e-15);
}

TEST(Kernel, InvalidSpecs) {
    KernelSpec k = spec(FamilySpec::hermite(), cplx(1.5, 0.0), 10);
    EXPECT_THROW(poisson_kernel(k, 0.0, 0.0), InvalidArgument);
    k.t = 0.5;
    k.N = 0;
    EXPECT_THROW(poisson_kernel(k, 0.0, 0.0), InvalidArgument);
    k.N = 100;
    EXPECT_THROW(poisson_kernel(k, 0.0, 0.0), InvalidArgument);
}

TEST(Kernel, GridCsv) {
    const KernelSpec k = spec(FamilySpec::hermite(), cplx(0.0, 0.0), 4);
    std::ostringstream os;
    write_kernel_grid(os, k, linspace(-1.0, 1.0, 2), linspace(0.0, 1.0, 3));
    std::istringstream in(os.str());
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "x,y,re,im");
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    EXPECT_EQ(rows, 6);
    EXPECT_NE(os.str().find("-1,0,1,0"), std::string::npos);
}
