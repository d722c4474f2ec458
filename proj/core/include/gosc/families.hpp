#pragma once

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "gosc/family_spec.hpp"
#include "gosc/fock.hpp"
#include "gosc/measure.hpp"
#include "gosc/recurrence.hpp"
#include "gosc/report.hpp"

namespace gosc {

// Canonical orthonormal coefficients (b_n > 0) for n = 0..n_max.
RecurrenceCoefficients family_coefficients(const FamilySpec& f, int n_max);

// How the classical printed normalization differs from the canonical one.
struct FamilyConventions {
    // sign of the printed b_n (-1 for Laguerre, whose printed psi_n = L_n / d_n alternate in sign)
    int printed_b_sign = 1;
    // printed lower coefficient c_n of the nonsymmetric recurrence equals b_{n-1}
    bool c_is_b_prev = false;
    // Gegenbauer index lambda = alpha + 1/2 (ultraspherical families)
    double gegenbauer_lambda = 0.0;
    std::string note;
};
FamilyConventions family_conventions(const FamilySpec& f);

// lambda_0 = 2 b_0^2, lambda_n = 2 (b_{n-1}^2 + b_n^2)
std::vector<double> family_energy_levels(const FamilySpec& f, int n_max);
// Per-family closed forms as printed in the classical treatment.
std::vector<double> family_energy_levels_printed(const FamilySpec& f, int n_max);

// Normalized probability density at x (throws outside the support).
double family_weight(const FamilySpec& f, double x);
// Classical normalization constant d_n (norm of the standard polynomial under the unnormalized weight).
double normalization_constant_d(const FamilySpec& f, int n);
// Ground function psi(x) of the weighted picture.
std::function<double(double)> ground_function(const FamilySpec& f);
MeasureSpec measure_for(const FamilySpec& f);

// (1 - x^2) psi_n'(x) on the grid; families on [-1, 1] only.
std::vector<double> apply_A(const FamilySpec& f, const RecurrenceCoefficients& c, int n, const std::vector<double>& xs);
// x psi_n'(x); Laguerre only.
std::vector<double> apply_K(const FamilySpec& f, const RecurrenceCoefficients& c, int n, const std::vector<double>& xs);

// Matrix of a differential operator in the psi basis, columns 0..M-1, by Gauss quadrature of the
// family weight (exact for polynomial images). op(x, psi, dpsi, d2psi) returns the image value.
using PointOperator = std::function<double(double x, double psi, double dpsi, double d2psi)>;
FockOperator differential_matrix(const FamilySpec& f, const RecurrenceCoefficients& c, int M, const std::string& label,
                                 const PointOperator& op, int lower_band, int upper_band);

// One operator identity lhs = rhs compared on columns 0..max_col, skipping rows/columns where a
// resolvent in the formula is singular.
struct OperatorIdentity {
    std::string id, tag;
    FockOperator lhs, rhs;
    std::set<int> skip_rows, skip_cols;
    ItemKind kind = ItemKind::Check;
    std::string note;
};
// max |lhs - rhs| / max(1, max |rhs|) over the compared entries
double identity_residual(const OperatorIdentity& e, int max_col, int* compared_cols = nullptr);

// Printed differential-operator forms of P, a+-, X~, P~ and related identities, re-expanded in the
// basis and compared with the Fock action for basis indices 0..m.
VerificationReport verify_differential_forms(const FamilySpec& f, int m = 15, double tol = 1e-8);

// Relative residual of the classical ODE, max |residual| / max |term| over the grid.
double ode_residual(const FamilySpec& f, const RecurrenceCoefficients& c, int n, const std::vector<double>& xs);
// The Gegenbauer equation in its printed arrangement (divided by (1-x^2)^alpha).
double ode_residual_printed_gegenbauer(const FamilySpec& f, const RecurrenceCoefficients& c, int n,
                                       const std::vector<double>& xs);
// `points` interior points of the support (a finite window for infinite supports).
std::vector<double> ode_grid(const FamilySpec& f, int points, int n_max);
VerificationReport verify_ode(const FamilySpec& f, int n_max = 20, int points = 200, double tol = 1e-8);

// Coefficient-difference identities, commutator closed forms, printed-vs-normative energy levels.
VerificationReport verify_identities(const FamilySpec& f, int n_top = 30, int N = 64);

// Rows for the catalog: one block per family.
struct CatalogEntry {
    FamilySpec family;
    RecurrenceCoefficients coeffs;
    std::vector<double> levels, levels_printed;
    std::vector<std::pair<std::string, std::string>> formulas;  // formula id -> topic
    int validated_n_max = 30;
    double parameter_lo = -0.9, parameter_hi = 5.0;
};
std::vector<CatalogEntry> family_catalog(int n_max);

}  // namespace gosc
