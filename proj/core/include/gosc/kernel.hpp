#pragma once

#include <complex>
#include <functional>
#include <iosfwd>
#include <vector>

#include "gosc/fock.hpp"
#include "gosc/recurrence.hpp"
#include "gosc/report.hpp"

namespace gosc {

// K(x, y; t) = sum_{n<N} t^n phi_n(x) phi_n(y) with phi_n = ground * psi_n (ground = 1 when empty).
struct KernelSpec {
    RecurrenceCoefficients coeffs;
    std::function<double(double)> ground;
    cplx t{0.0, 0.0};
    int N = 0;

    void validate() const;
};

struct KernelValue {
    cplx value;
    // |t|^N * max_{n<N} |phi_n(x) phi_n(y)|
    double tail_estimate = 0.0;
    int terms = 0;
};

KernelValue poisson_kernel(const KernelSpec& spec, double x, double y);

// Smallest N whose tail estimate at (x, y) falls below tol, capped by the available coefficients.
int kernel_terms_for(const KernelSpec& spec, double x, double y, double tol);

// (1 - w^2)^-1/2 exp((2 x y w - (x^2 + y^2) w^2) / (1 - w^2)); equals the Hermite polynomial
// kernel sum with psi_n orthonormal under exp(-x^2)/sqrt(pi).
double mehler_closed_form(double x, double y, double omega);
// Principal branch, |w| <= 1, w^2 != 1.
cplx mehler_closed_form(double x, double y, cplx omega);
// Hermite-function kernel: pi^-1/2 exp(-(x^2 + y^2)/2) times the closed form.
cplx mehler_weighted(double x, double y, cplx omega);
// exp(-i x y) / sqrt(2 pi)
cplx hermite_fourier_kernel(double x, double y);

// Classical Poisson kernel of the orthonormal Chebyshev-T system at x = cos(theta), y = cos(phi), |r| < 1:
// ((1 - r^2)/(1 - 2 r cos(theta - phi) + r^2) + (1 - r^2)/(1 - 2 r cos(theta + phi) + r^2)) / 2.
double chebyshev_poisson_closed_form(double theta, double phi, double r);

// diag(t^n); unitary for |t| = 1.
FockOperator fourier_fock_matrix(cplx t, int N);

// With F = diag(t^n), P_a = P(conj t), P_b = P(t):
//   P_a F = F X,  X F = F P_b,  P_b F^-1 = F^-1 X,  X F^-1 = F^-1 P_a,
//   H_a F = F H_b,  H_b F^-1 = F^-1 H_a.
VerificationReport verify_intertwining(const RecurrenceCoefficients& c, int N, cplx t = cplx(0.0, -1.0),
                                       double tol = 1e-12);

// Discretized integral operator on the nodes of the G-point Gauss rule of the measure:
// (K f)(y_i) = sum_j w_j f(x_j) K(x_j, y_i; t) with the kernel truncated at G terms.
// Direction Inverse uses conj(t).
enum class Direction { Direct, Inverse };

struct KernelDiscretization {
    std::vector<double> nodes, weights;
    Eigen::MatrixXcd matrix;  // acts on node samples
    double gram_residual = 0.0;
    cplx t;
};

// Throws QuadratureError when the discrete Gram matrix of psi_0..psi_{G-1} deviates from I by more
// than gram_tol.
KernelDiscretization discretize_kernel(const RecurrenceCoefficients& c, int G, cplx t,
                                       Direction dir = Direction::Direct, double gram_tol = 1e-10);

std::vector<cplx> kernel_transform(const KernelDiscretization& k, const std::vector<cplx>& f_samples);

// ||K(conj t) K(t) f - f|| / ||f|| maximized over f = psi_0 .. psi_m sampled on the nodes.
double kernel_round_trip_error(const RecurrenceCoefficients& c, int G, cplx t, int m);

// CSV rows x,y,re,im with 17 significant digits.
void write_kernel_grid(std::ostream& os, const KernelSpec& spec, const std::vector<double>& xs,
                       const std::vector<double>& ys);

std::vector<double> linspace(double lo, double hi, int points);

}  // namespace gosc
