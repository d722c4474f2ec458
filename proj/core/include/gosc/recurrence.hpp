#pragma once

#include <Eigen/Dense>

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "gosc/measure.hpp"

namespace gosc {

enum class Provenance { ClosedForm, SolvedFromMoments };

std::string to_string(Provenance p);

// Three-term recurrence x psi_n = b_n psi_{n+1} + a_n psi_n + b_{n-1} psi_{n-1}, psi_0 = 1.
struct RecurrenceCoefficients {
    std::vector<double> a;
    std::vector<double> b;
    int n_max = -1;
    Provenance provenance = Provenance::ClosedForm;

    RecurrenceCoefficients() = default;
    RecurrenceCoefficients(std::vector<double> a_, std::vector<double> b_, Provenance p = Provenance::ClosedForm);

    size_t size() const { return b.size(); }
    bool symmetric(double tol = 0.0) const;
    // b_{n-1} with b_{-1} = 0
    double b_prev(int n) const { return n <= 0 ? 0.0 : b[static_cast<size_t>(n - 1)]; }
    void validate() const;  // b_n > 0, equal lengths
};

// psi_0(x) .. psi_n(x); needs n <= n_max + 1 (psi_{n_max+1} uses b_{n_max}).
std::vector<double> evaluate(const RecurrenceCoefficients& c, double x, int n);
std::vector<double> evaluate_derivative(const RecurrenceCoefficients& c, double x, int n);
std::vector<double> evaluate_second_derivative(const RecurrenceCoefficients& c, double x, int n);

struct PolyValues {
    std::vector<double> psi, dpsi, d2psi;
};
PolyValues evaluate_all(const RecurrenceCoefficients& c, double x, int n);

// max over n < n_top of |x psi_n - b_n psi_{n+1} - a_n psi_n - b_{n-1} psi_{n-1}| / scale
double recurrence_residual(const RecurrenceCoefficients& c, double x, int n_top);

struct GramOptions {
    double tolerance = 1e-13;  // agreement between successive refinement levels
    int min_level = 3;
    int max_level = 11;
};

// G_ij = integral psi_i psi_j dmu, i, j < n, by adaptive double-exponential quadrature
// (Gauss-Legendre panels for tabulated weights, atom sums for discrete measures).
Eigen::MatrixXd gram_matrix(const RecurrenceCoefficients& c, const MeasureSpec& m, int n, GramOptions opt = {});

// Gram matrix of an arbitrary basis u_0..u_{n-1}: basis(x, dl, dr) returns the n values at x.
using BasisFunction = std::function<std::vector<double>(double x)>;
Eigen::MatrixXd gram_matrix(const BasisFunction& basis, const MeasureSpec& m, int n, GramOptions opt = {});

// phi_n(x) = psi(x) psi_n(x)
std::vector<double> to_weighted(const RecurrenceCoefficients& c, const std::function<double(double)>& ground,
                                double x, int n);

struct WeightedSystem {
    RecurrenceCoefficients coeffs;
    std::function<double(double)> ground;
    // target measure nu(dx) = |psi(x)|^-2 mu(dx)
    MeasureSpec target;
};

WeightedSystem make_weighted_system(const RecurrenceCoefficients& c, const MeasureSpec& mu,
                                    std::function<double(double)> ground);

// CSV rows n,x,psi,dpsi with 17 significant digits.
void write_value_table(std::ostream& os, const RecurrenceCoefficients& c, const std::vector<double>& xs, int n);

}  // namespace gosc
