#pragma once

#include <vector>

#include "gosc/family_spec.hpp"
#include "gosc/measure.hpp"
#include "gosc/mp.hpp"
#include "gosc/recurrence.hpp"

namespace gosc {

struct MomentSequence {
    std::vector<mp::Real> values;  // mu_0 .. mu_K, mu_0 = 1
    int K = -1;
    long precision_bits = 0;
    // relative accuracy of the values (2^-bits for closed forms, the achieved
    // quadrature tolerance otherwise)
    double accuracy = 0.0;
    bool symmetric = false;  // symmetry claim carried over from the measure

    std::vector<double> to_double() const;
};

enum class MomentMethod { Auto, ClosedForm, Quadrature };

struct MomentOptions {
    MomentMethod method = MomentMethod::Auto;
    // relative quadrature tolerance; <= 0 selects 2^-(bits - 24)
    double tolerance = 0.0;
    int min_level = 3;
    int max_level = 10;
    // allowed |mass - 1| when the measure carries an explicit normalization
    double mass_tolerance = 1e-10;
};

MomentSequence compute_moments(const MeasureSpec& m, int K, long precision_bits, MomentOptions opt = {});

// Closed-form moments of a family weight, optionally restricted to the half-line [0, hi]
// (side = +1) or [lo, 0] (side = -1) with doubled weight. side = 0 is the full measure.
MomentSequence closed_form_moments(const FamilySpec& f, int K, long precision_bits, int side = 0);
bool has_closed_form_moments(const MeasureSpec& m);

// Leading Hankel determinants det[mu_{i+j}]_{i,j<k}, k = 1..n, by Gaussian elimination.
std::vector<mp::Real> hankel_determinants(const MomentSequence& ms, int n);
bool hankel_positive(const MomentSequence& ms, int n);

struct SolverOptions {
    // bound on the estimated relative forward error of every emitted coefficient
    double tolerance = 1e-14;
    bool estimate_error = true;
    // |a_n| allowed when the moments claim symmetry (nonsymmetric solve)
    double symmetry_tolerance = 1e-12;
};

struct SymmetricSolution {
    std::vector<mp::Real> b;
    std::vector<double> b_double;
    double error_estimate = 0.0;
    long precision_bits = 0;

    RecurrenceCoefficients coefficients() const;
};

struct NonsymmetricSolution {
    std::vector<mp::Real> a, b;
    RecurrenceCoefficients coeffs;
    // A_{k,n} = integral x^k psi_n dmu, table[n][k]
    std::vector<std::vector<mp::Real>> table;
    double error_estimate = 0.0;
    long precision_bits = 0;
};

// Needs moments through order 2 n_max + 2.
SymmetricSolution solve_symmetric_recurrence(const MomentSequence& ms, int n_max, SolverOptions opt = {});
NonsymmetricSolution solve_nonsymmetric_recurrence(const MomentSequence& ms, int n_max, SolverOptions opt = {});

// <e_0, J^k e_0>, k = 0..K, for the Jacobi matrix with diagonal a and off-diagonal b.
std::vector<mp::Real> walk_sums(const std::vector<mp::Real>& a, const std::vector<mp::Real>& b, int K, long bits);
std::vector<double> walk_sums(const std::vector<double>& a, const std::vector<double>& b, int K);

struct Symmetrization {
    std::vector<double> d;      // d_j = sqrt(b_j c_{j+1})
    std::vector<double> gamma;  // gamma_0 = 1, gamma_n = sqrt(c_1..c_n / (b_0..b_{n-1}))
};

// c is indexed from 0; c[0] is not used.
Symmetrization symmetrize_two_sequence(const std::vector<double>& b, const std::vector<double>& c);

// true iff |b_n^2 - (n+1) b_0^2| <= tol (n+1) b_0^2 for every supplied n
bool is_canonical_heisenberg(const std::vector<double>& b, double tol);

}  // namespace gosc
