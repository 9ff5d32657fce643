#pragma once

#include <stdint.h>
#ifndef MPFR_USE_INTMAX_T
#define MPFR_USE_INTMAX_T 1
#endif
#include <mpfr.h>

#include <algorithm>
#include <string>
#include <utility>

#include "alphax/errors.hpp"

namespace alphax {

inline constexpr mpfr_prec_t kDefaultPrec = 256;

// Default working precision in bits: ALPHAX_PRECISION from the environment if
// set and sane, otherwise 256.
mpfr_prec_t default_precision();

// Significant decimal digits that P bits can support: ceil(P * log10(2)).
int sig_digits_for(mpfr_prec_t prec);

// Arbitrary-precision real number backed by mpfr_t.
//
// Every value carries its own precision. Binary operations round the result
// to the larger of the two operand precisions, round-to-nearest ties-to-even.
// Comparisons are exact bit comparisons of the stored values: any fuzz is
// the caller's business, not this layer's.
class Real {
public:
    Real() { mpfr_init2(v_, MPFR_PREC_MIN); mpfr_set_zero(v_, 1); }
    explicit Real(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    Real(long value, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_si(v_, value, MPFR_RNDN); }
    Real(unsigned long value, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_ui(v_, value, MPFR_RNDN); }

    // Parse a decimal literal. Throws validation_error on anything mpfr
    // cannot fully consume ("1.2.3", "abc", empty string).
    Real(const std::string& decimal, mpfr_prec_t prec);

    Real(const Real& other) {
        mpfr_init2(v_, mpfr_get_prec(other.v_));
        mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    Real(Real&& other) noexcept {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, other.v_);
    }
    Real& operator=(const Real& other) {
        if (this != &other) {
            mpfr_set_prec(v_, mpfr_get_prec(other.v_));
            mpfr_set(v_, other.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& other) noexcept {
        if (this != &other) mpfr_swap(v_, other.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }

    // Decimal string with the given number of significant digits (%Rg style,
    // round-half-even). sig <= 0 means "enough digits for this precision".
    std::string str(int sig = 0) const;

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    // Binary exponent e with |x| in [2^(e-1), 2^e); only valid for nonzero x.
    mpfr_exp_t exponent() const { return mpfr_get_exp(v_); }

    friend Real operator+(const Real& a, const Real& b) { return binop(mpfr_add, a, b); }
    friend Real operator-(const Real& a, const Real& b) { return binop(mpfr_sub, a, b); }
    friend Real operator*(const Real& a, const Real& b) { return binop(mpfr_mul, a, b); }
    friend Real operator/(const Real& a, const Real& b) { return binop(mpfr_div, a, b); }

    friend Real operator+(const Real& a, long b) { return binop_si(mpfr_add_si, a, b); }
    friend Real operator-(const Real& a, long b) { return binop_si(mpfr_sub_si, a, b); }
    friend Real operator*(const Real& a, long b) { return binop_si(mpfr_mul_si, a, b); }
    friend Real operator/(const Real& a, long b) { return binop_si(mpfr_div_si, a, b); }
    friend Real operator-(long a, const Real& b) {
        Real r(b.prec());
        mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator/(long a, const Real& b) {
        Real r(b.prec());
        mpfr_si_div(r.v_, a, b.v_, MPFR_RNDN);
        return r;
    }

    Real operator-() const {
        Real r(prec());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }

    Real& operator+=(const Real& b) { mpfr_add(v_, v_, b.v_, MPFR_RNDN); return *this; }
    Real& operator-=(const Real& b) { mpfr_sub(v_, v_, b.v_, MPFR_RNDN); return *this; }
    Real& operator*=(const Real& b) { mpfr_mul(v_, v_, b.v_, MPFR_RNDN); return *this; }
    Real& operator/=(const Real& b) { mpfr_div(v_, v_, b.v_, MPFR_RNDN); return *this; }

    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend bool operator!=(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) == 0; }
    friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }

    friend bool operator==(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }
    friend bool operator<(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) < 0; }
    friend bool operator<=(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) <= 0; }
    friend bool operator>(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) > 0; }
    friend bool operator>=(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) >= 0; }

private:
    using mpfr_binop = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
    using mpfr_binop_si = int (*)(mpfr_ptr, mpfr_srcptr, long, mpfr_rnd_t);

    static Real binop(mpfr_binop f, const Real& a, const Real& b) {
        Real r(std::max(a.prec(), b.prec()));
        f(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    static Real binop_si(mpfr_binop_si f, const Real& a, long b) {
        Real r(a.prec());
        f(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }

    mpfr_t v_;
};

// ---- elementary functions (result at the argument's precision) ----

inline Real abs(const Real& x) {
    Real r(x.prec());
    mpfr_abs(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}
inline Real log(const Real& x) {
    Real r(x.prec());
    mpfr_log(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}
inline Real log2(const Real& x) {
    Real r(x.prec());
    mpfr_log2(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}
inline Real log10(const Real& x) {
    Real r(x.prec());
    mpfr_log10(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}
inline Real exp(const Real& x) {
    Real r(x.prec());
    mpfr_exp(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}
inline Real sqrt(const Real& x) {
    Real r(x.prec());
    mpfr_sqrt(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}
// x^n, correctly rounded, at an explicit precision (n may be negative).
inline Real pow_si(const Real& x, long n, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_pow_si(r.raw(), x.raw(), n, MPFR_RNDN);
    return r;
}
inline Real pow_si(const Real& x, long n) { return pow_si(x, n, x.prec()); }
// x^y for real y.
inline Real pow(const Real& x, const Real& y) {
    Real r(std::max(x.prec(), y.prec()));
    mpfr_pow(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
    return r;
}
// x * 2^e, exact.
inline Real ldexp2(const Real& x, long e) {
    Real r(x.prec());
    mpfr_mul_2si(r.raw(), x.raw(), e, MPFR_RNDN);
    return r;
}
// Round x to a (possibly different) precision.
inline Real at_prec(const Real& x, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}
// Fused a*b + c and a*b - c (a single rounding of the exact result).
inline Real fma(const Real& a, const Real& b, const Real& c, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_fma(r.raw(), a.raw(), b.raw(), c.raw(), MPFR_RNDN);
    return r;
}
inline Real fms(const Real& a, const Real& b, const Real& c, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_fms(r.raw(), a.raw(), b.raw(), c.raw(), MPFR_RNDN);
    return r;
}

// True when |x - y| <= one ulp of y (y nonzero): the regime where a
// comparison at y's precision cannot be trusted to decide a boundary.
bool within_one_ulp(const Real& x, const Real& y);

} // namespace alphax
