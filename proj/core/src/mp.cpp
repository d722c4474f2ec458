#include "gosc/mp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace gosc::mp {

namespace {

mpfr_prec_t clamp_bits(long bits) {
    if (bits < MPFR_PREC_MIN) return MPFR_PREC_MIN;
    if (bits > 1 << 20) throw std::invalid_argument("precision too large");
    return static_cast<mpfr_prec_t>(bits);
}

long wider(const Real& a, const Real& b) { return std::max(a.bits(), b.bits()); }

}  // namespace

Real::Real(long bits) {
    mpfr_init2(v_, clamp_bits(bits));
    mpfr_set_zero(v_, 1);
}

Real::Real(double v, long bits) {
    mpfr_init2(v_, clamp_bits(bits));
    mpfr_set_d(v_, v, MPFR_RNDN);
}

Real::Real(const std::string& decimal, long bits) {
    mpfr_init2(v_, clamp_bits(bits));
    if (mpfr_set_str(v_, decimal.c_str(), 10, MPFR_RNDN) != 0) {
        mpfr_clear(v_);
        throw std::invalid_argument("not a decimal number: " + decimal);
    }
}

Real Real::from_int(long v, long bits) {
    Real r(bits);
    mpfr_set_si(r.v_, v, MPFR_RNDN);
    return r;
}

Real::Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

Real::Real(Real&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
}

Real& Real::operator=(const Real& o) {
    if (this != &o) {
        mpfr_set_prec(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

Real& Real::operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
}

Real::~Real() { mpfr_clear(v_); }

Real Real::with_bits(long bits) const {
    Real r(bits);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
}

std::string Real::to_string(int digits) const {
    if (mpfr_nan_p(v_)) return "nan";
    if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
    if (mpfr_zero_p(v_)) return "0";
    size_t n = digits > 0 ? static_cast<size_t>(digits) : mpfr_get_str_ndigits(10, mpfr_get_prec(v_));
    mpfr_exp_t e = 0;
    char* s = mpfr_get_str(nullptr, &e, 10, n, v_, MPFR_RNDN);
    std::string m(s);
    mpfr_free_str(s);
    std::string sign;
    if (!m.empty() && m[0] == '-') {
        sign = "-";
        m.erase(0, 1);
    }
    while (m.size() > 1 && m.back() == '0') m.pop_back();
    std::string out = sign + m.substr(0, 1);
    if (m.size() > 1) out += "." + m.substr(1);
    long exp10 = static_cast<long>(e) - 1;
    if (exp10 != 0) out += "e" + std::to_string(exp10);
    return out;
}

#define GOSC_COMPOUND(op, fn)                                         \
    Real& Real::operator op(const Real& o) {                          \
        if (mpfr_get_prec(o.v_) > mpfr_get_prec(v_))                  \
            mpfr_prec_round(v_, mpfr_get_prec(o.v_), MPFR_RNDN);      \
        fn(v_, v_, o.v_, MPFR_RNDN);                                  \
        return *this;                                                 \
    }                                                                 \
    Real& Real::operator op(double o) {                               \
        fn##_d(v_, v_, o, MPFR_RNDN);                                 \
        return *this;                                                 \
    }

GOSC_COMPOUND(+=, mpfr_add)
GOSC_COMPOUND(-=, mpfr_sub)
GOSC_COMPOUND(*=, mpfr_mul)
GOSC_COMPOUND(/=, mpfr_div)
#undef GOSC_COMPOUND

Real Real::operator-() const {
    Real r(bits());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
}

#define GOSC_BINARY(op, fn)                                           \
    Real operator op(const Real& a, const Real& b) {                  \
        Real r(wider(a, b));                                          \
        fn(r.raw(), a.raw(), b.raw(), MPFR_RNDN);                     \
        return r;                                                     \
    }                                                                 \
    Real operator op(const Real& a, double b) {                       \
        Real r(a.bits());                                             \
        fn##_d(r.raw(), a.raw(), b, MPFR_RNDN);                       \
        return r;                                                     \
    }

GOSC_BINARY(+, mpfr_add)
GOSC_BINARY(-, mpfr_sub)
GOSC_BINARY(*, mpfr_mul)
GOSC_BINARY(/, mpfr_div)
#undef GOSC_BINARY

Real operator+(double a, const Real& b) { return b + a; }
Real operator*(double a, const Real& b) { return b * a; }
Real operator-(double a, const Real& b) {
    Real r(b.bits());
    mpfr_d_sub(r.raw(), a, b.raw(), MPFR_RNDN);
    return r;
}
Real operator/(double a, const Real& b) {
    Real r(b.bits());
    mpfr_d_div(r.raw(), a, b.raw(), MPFR_RNDN);
    return r;
}

bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.raw(), b.raw()) != 0; }
bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.raw(), b.raw()) != 0; }
bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.raw(), b.raw()) != 0; }
bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.raw(), b.raw()) != 0; }
bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.raw(), b.raw()) != 0; }
bool operator<(const Real& a, double b) { return mpfr_cmp_d(a.raw(), b) < 0; }
bool operator>(const Real& a, double b) { return mpfr_cmp_d(a.raw(), b) > 0; }
bool operator<=(const Real& a, double b) { return mpfr_cmp_d(a.raw(), b) <= 0; }
bool operator>=(const Real& a, double b) { return mpfr_cmp_d(a.raw(), b) >= 0; }

#define GOSC_UNARY(name, fn)                                          \
    Real name(const Real& a) {                                        \
        Real r(a.bits());                                             \
        fn(r.raw(), a.raw(), MPFR_RNDN);                              \
        return r;                                                     \
    }

GOSC_UNARY(abs, mpfr_abs)
GOSC_UNARY(sqrt, mpfr_sqrt)
GOSC_UNARY(exp, mpfr_exp)
GOSC_UNARY(log, mpfr_log)
GOSC_UNARY(log2, mpfr_log2)
GOSC_UNARY(sinh, mpfr_sinh)
GOSC_UNARY(cosh, mpfr_cosh)
GOSC_UNARY(tanh, mpfr_tanh)
GOSC_UNARY(gamma, mpfr_gamma)
#undef GOSC_UNARY

Real lgamma(const Real& a) {
    Real r(a.bits());
    int sgn = 0;
    mpfr_lgamma(r.raw(), &sgn, a.raw(), MPFR_RNDN);
    return r;
}

Real pow(const Real& a, const Real& e) {
    Real r(wider(a, e));
    mpfr_pow(r.raw(), a.raw(), e.raw(), MPFR_RNDN);
    return r;
}

Real pow(const Real& a, long e) {
    Real r(a.bits());
    mpfr_pow_si(r.raw(), a.raw(), e, MPFR_RNDN);
    return r;
}

Real pi(long bits) {
    Real r(bits);
    mpfr_const_pi(r.raw(), MPFR_RNDN);
    return r;
}

Real max(const Real& a, const Real& b) { return a < b ? b : a; }

}  // namespace gosc::mp
