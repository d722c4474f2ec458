#pragma once

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gosc/recurrence.hpp"
#include "gosc/report.hpp"

namespace gosc {

using cplx = std::complex<double>;

// t whose conjugation form P(t) = D(t)* X D(t) reproduces the momentum action
// P psi_n = i (b_{n-1} psi_{n-1} - b_n psi_{n+1}).
inline const cplx kDistinguishedT{0.0, 1.0};

// Truncated Fock-space matrix. Columns 0..valid_cols act exactly as the infinite operator.
struct FockOperator {
    Eigen::MatrixXcd matrix;
    int dim = 0;
    int bandwidth = 0;
    std::string label;
    int valid_cols = -1;

    cplx operator()(int r, int c) const { return matrix(r, c); }
    FockOperator adjoint() const;
    FockOperator relabel(std::string l) const;
};

FockOperator operator*(const FockOperator& A, const FockOperator& B);
FockOperator operator+(const FockOperator& A, const FockOperator& B);
FockOperator operator-(const FockOperator& A, const FockOperator& B);
FockOperator operator*(cplx s, const FockOperator& A);
FockOperator operator*(double s, const FockOperator& A);
FockOperator commutator(const FockOperator& A, const FockOperator& B);

// max |A_ij - B_ij| over columns j <= min(valid(A), valid(B)), all rows
double valid_residual(const FockOperator& A, const FockOperator& B);
// max |A_ij| over valid columns
double valid_max_abs(const FockOperator& A);
// max |A_ij|, i != j, over valid columns
double valid_offdiagonal(const FockOperator& A);
// worst entries of A - B on valid columns
std::vector<FailureLocation> worst_entries(const FockOperator& A, const FockOperator& B, int count = 3);

FockOperator identity_operator(int N);
FockOperator number_operator(int N);
FockOperator diagonal_operator(std::string label, const std::vector<cplx>& d);
FockOperator diagonal_operator(std::string label, int N, const std::function<double(int)>& f);
// B(N) psi_n = b_{n-1}^2 psi_n, b_{-1} = 0
FockOperator b_of_number(const RecurrenceCoefficients& c, int N);

FockOperator position_operator(const RecurrenceCoefficients& c, int N);
FockOperator momentum_operator(const RecurrenceCoefficients& c, int N, cplx t);
FockOperator hamiltonian(const RecurrenceCoefficients& c, int N, cplx t);

struct Ladder {
    FockOperator plus, minus;
};
// a+ psi_n = sqrt2 b_n psi_{n+1}, a- psi_n = sqrt2 b_{n-1} psi_{n-1}; symmetric coefficients only.
Ladder ladder_operators(const RecurrenceCoefficients& c, int N);

struct Tilde {
    FockOperator X, P, H;
};
// Rotated pair of the nonsymmetric scheme: zero-diagonal X~, P~ with entries -+i b_n, H~ = X~^2 + P~^2.
Tilde tilde_operators(const RecurrenceCoefficients& c, int N);
// a~+- = (X~ +- i P~)/sqrt2
Ladder tilde_ladder(const RecurrenceCoefficients& c, int N);

// Energy levels lambda_0 = 2 b_0^2, lambda_n = 2 (b_{n-1}^2 + b_n^2).
std::vector<double> energy_levels(const RecurrenceCoefficients& c, int count);

struct AlgebraRelation {
    double A = 1.0;
    std::function<double(int)> C;
};

// [a-, a+] = 2(B(N+I) - B(N)), [N, a+-] = +-a+-, a-a+ = 2 diag(b_n^2), a+a- = 2 diag(b_{n-1}^2),
// H = a+a- + a-a+, and optionally a-a+ - A a+a- = 2 C(N).
VerificationReport verify_oscillator_algebra(const RecurrenceCoefficients& c, int N,
                                             std::optional<AlgebraRelation> rel = std::nullopt,
                                             double tol = 1e-12);

// ---- su_phi(2) on the tensor product of two truncated Fock spaces ----

struct DeformationFunction {
    enum class Kind { Linear, QBracket, Sinh, Custom } kind = Kind::Linear;
    double param = 0.0;  // q for QBracket, eta for Sinh
    std::function<double(double)> custom;

    static DeformationFunction linear() { return {Kind::Linear, 0.0, {}}; }
    static DeformationFunction q_bracket(double q);
    static DeformationFunction sinh_family(double eta);
    static DeformationFunction from(std::function<double(double)> f) { return {Kind::Custom, 0.0, std::move(f)}; }

    double operator()(double x) const;
    std::string name() const;
};

// b_n = sqrt(B(n+1) b0^2 / B(1)), n = 0..n_max
RecurrenceCoefficients deformation_coefficients(const DeformationFunction& B, int n_max, double b0_squared = 0.5);

// Operator on C^N (x) C^N; basis index n1 * N + n2. Validity is tracked per factor.
struct TensorOperator {
    Eigen::MatrixXcd matrix;
    int n = 0;
    int valid1 = -1, valid2 = -1;
    int bw1 = 0, bw2 = 0;
    std::string label;

    bool column_valid(int n1, int n2) const { return n1 <= valid1 && n2 <= valid2; }
};

TensorOperator kron(const FockOperator& A, const FockOperator& B);
TensorOperator operator*(const TensorOperator& A, const TensorOperator& B);
TensorOperator operator+(const TensorOperator& A, const TensorOperator& B);
TensorOperator operator-(const TensorOperator& A, const TensorOperator& B);
TensorOperator operator*(double s, const TensorOperator& A);
TensorOperator commutator(const TensorOperator& A, const TensorOperator& B);

struct SuPhi2 {
    TensorOperator J_plus, J_minus, J_z;
};

// J+ = a+ (x) a-, J- = a- (x) a+, Jz = (N (x) I - I (x) N)/2. Throws InvalidArgument when the
// coefficients do not satisfy b_n^2 = B(n+1) b_0^2 / B(1).
SuPhi2 su_phi2_generators(const DeformationFunction& B, int N, const RecurrenceCoefficients& c,
                          double consistency_tol = 1e-12);

// [Jz, J+-] = +-J+-, [J+, J-] = s B(2 Jz) with s = 4 (b_0^2 / B(1))^2, per fixed Cz = n1 + n2 sector;
// the literal 2 B(Jz) operand is reported as informational.
VerificationReport verify_su_phi2(const DeformationFunction& B, int N, const RecurrenceCoefficients& c,
                                  double tol = 1e-12);

// max over the grid of |f(x) f(y+1) - f(y) f(x+1) - f(x-y)|
double check_functional_equation(const DeformationFunction& f, const std::vector<std::pair<double, double>>& grid);
std::vector<std::pair<double, double>> square_grid(double lo, double hi, int points);

}  // namespace gosc
