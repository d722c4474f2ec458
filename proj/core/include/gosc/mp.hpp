#pragma once

#include <mpfr.h>

#include <string>
#include <utility>

namespace gosc::mp {

// Extended-precision real with a fixed bit precision per value.
// Binary operations round to the larger of the two operand precisions.
class Real {
public:
    explicit Real(long bits = 64);
    Real(double v, long bits);
    Real(const std::string& decimal, long bits);

    Real(const Real& o);
    Real(Real&& o) noexcept;
    Real& operator=(const Real& o);
    Real& operator=(Real&& o) noexcept;
    ~Real();

    static Real from_int(long v, long bits);

    long bits() const { return static_cast<long>(mpfr_get_prec(v_)); }
    Real with_bits(long bits) const;

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    // Decimal string; digits = 0 picks enough digits to round-trip at this precision.
    std::string to_string(int digits = 0) const;

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    Real& operator+=(const Real& o);
    Real& operator-=(const Real& o);
    Real& operator*=(const Real& o);
    Real& operator/=(const Real& o);
    Real& operator+=(double o);
    Real& operator-=(double o);
    Real& operator*=(double o);
    Real& operator/=(double o);

    Real operator-() const;

private:
    mpfr_t v_;
};

Real operator+(const Real& a, const Real& b);
Real operator-(const Real& a, const Real& b);
Real operator*(const Real& a, const Real& b);
Real operator/(const Real& a, const Real& b);
Real operator+(const Real& a, double b);
Real operator-(const Real& a, double b);
Real operator*(const Real& a, double b);
Real operator/(const Real& a, double b);
Real operator+(double a, const Real& b);
Real operator-(double a, const Real& b);
Real operator*(double a, const Real& b);
Real operator/(double a, const Real& b);

bool operator<(const Real& a, const Real& b);
bool operator>(const Real& a, const Real& b);
bool operator<=(const Real& a, const Real& b);
bool operator>=(const Real& a, const Real& b);
bool operator==(const Real& a, const Real& b);
bool operator<(const Real& a, double b);
bool operator>(const Real& a, double b);
bool operator<=(const Real& a, double b);
bool operator>=(const Real& a, double b);

Real abs(const Real& a);
Real sqrt(const Real& a);
Real exp(const Real& a);
Real log(const Real& a);
Real log2(const Real& a);
Real pow(const Real& a, const Real& e);
Real pow(const Real& a, long e);
Real sinh(const Real& a);
Real cosh(const Real& a);
Real tanh(const Real& a);
Real gamma(const Real& a);
Real lgamma(const Real& a);
Real pi(long bits);
Real max(const Real& a, const Real& b);

}  // namespace gosc::mp
