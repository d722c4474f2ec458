#pragma once

#include <vector>

#include "gosc/measure.hpp"
#include "gosc/recurrence.hpp"
#include "gosc/report.hpp"

namespace gosc {

// mu_s = mu_+ + mu_-; plus and minus hold the probability measures 2 mu_+ on [0, upper) and
// 2 mu_- on (lower, 0].
struct MeasureSplit {
    MeasureSpec symmetric;
    MeasureSpec plus;
    MeasureSpec minus;
};

// Throws InvalidArgument for asymmetric input or an atom at zero.
MeasureSplit split_measure(const MeasureSpec& m);

struct HalfLineSystems {
    RecurrenceCoefficients plus;             // solved for 2 mu_+
    RecurrenceCoefficients minus;            // solved independently for 2 mu_-
    RecurrenceCoefficients minus_reflected;  // (-a_n, b_n) of the plus system
    double diagonal_mismatch = 0.0;          // max |a^-_n + a^+_n|
    double b_mismatch = 0.0;                 // max |b^-_n - b^+_n|
    long precision_bits = 0;
};

// Solves both half-line systems from moments at 2 * bits; the minus side uses quadrature moments.
HalfLineSystems half_line_systems(const MeasureSplit& s, int n_max, long bits = 128);

// Canonical symmetric system of mu_s: closed form for families, a moment solve otherwise.
RecurrenceCoefficients symmetric_system(const MeasureSplit& s, int n_max, long bits = 128);

// Direct-sum combination: psi+_n(x) for x >= 0, psi-_n(x) for x < 0, times `scale`.
std::vector<double> combined_values(const HalfLineSystems& h, double x, int n, double scale = 1.0);

// Gram checks of the combined system under mu_s and of the even/odd sub-families of the symmetric
// system under 2 mu_+ and 2 mu_-, plus the half-line consistency and informational recurrence items.
VerificationReport verify_combination(const MeasureSplit& s, const HalfLineSystems& h,
                                      const RecurrenceCoefficients& symmetric, int n_max, double tol = 1e-8);

}  // namespace gosc
