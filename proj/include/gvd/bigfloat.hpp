#pragma once

#include <mpfr.h>

#include <string>
#include <utility>

#include "gvd/rational.hpp"

namespace gvd {

// Arbitrary-precision real scalar over mpfr_t (RAII, value semantics).
//
// Precision policy: every value carries its own precision; binary operations
// produce a result at min(precision(a), precision(b)).  Mixed-precision use
// therefore degrades loudly (the low-precision operand wins) instead of
// quietly padding garbage digits.  All roundings are MPFR_RNDN.
class BigFloat {
public:
    static constexpr mpfr_prec_t default_prec = 256;

    explicit BigFloat(mpfr_prec_t prec = default_prec) {
        mpfr_init2(v_, prec_clamp(prec));
        mpfr_set_zero(v_, 1);
    }
    BigFloat(const BigFloat& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    BigFloat(BigFloat&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    static BigFloat from_double(double x, mpfr_prec_t prec = default_prec) {
        BigFloat r(prec);
        mpfr_set_d(r.v_, x, MPFR_RNDN);
        return r;
    }
    static BigFloat from_long(long x, mpfr_prec_t prec = default_prec) {
        BigFloat r(prec);
        mpfr_set_si(r.v_, x, MPFR_RNDN);
        return r;
    }
    static BigFloat from_rational(const Rational& q, mpfr_prec_t prec = default_prec) {
        BigFloat r(prec);
        mpfr_set_q(r.v_, q.get_mpq_t(), MPFR_RNDN);
        return r;
    }
    // Decimal string; throws UsageError if the text is not a number.
    static BigFloat from_string(const std::string& s, mpfr_prec_t prec = default_prec);
    static BigFloat pi(mpfr_prec_t prec = default_prec) {
        BigFloat r(prec);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }
    // 2^e, exact.
    static BigFloat pow2(long e, mpfr_prec_t prec = default_prec) {
        BigFloat r(prec);
        mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
        return r;
    }

    // Same value re-rounded at a different precision.
    BigFloat at_precision(mpfr_prec_t prec) const {
        BigFloat r(prec);
        mpfr_set(r.v_, v_, MPFR_RNDN);
        return r;
    }

    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    // Deterministic shortest-faithful decimal ("%.*Rg"); digits defaults to
    // the full decimal width of the precision.
    std::string str(int digits = 0) const;

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    BigFloat operator-() const {
        BigFloat r(precision());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }

    friend BigFloat operator+(const BigFloat& a, const BigFloat& b) {
        BigFloat r(min_prec(a, b));
        mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b) {
        BigFloat r(min_prec(a, b));
        mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b) {
        BigFloat r(min_prec(a, b));
        mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b) {
        BigFloat r(min_prec(a, b));
        mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    BigFloat& operator+=(const BigFloat& o) { return *this = *this + o; }
    BigFloat& operator-=(const BigFloat& o) { return *this = *this - o; }
    BigFloat& operator*=(const BigFloat& o) { return *this = *this * o; }
    BigFloat& operator/=(const BigFloat& o) { return *this = *this / o; }

    friend bool operator==(const BigFloat& a, const BigFloat& b) {
        return mpfr_cmp(a.v_, b.v_) == 0;
    }
    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return b < a; }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return !(b < a); }
    friend bool operator>=(const BigFloat& a, const BigFloat& b) { return !(a < b); }
    friend bool operator!=(const BigFloat& a, const BigFloat& b) { return !(a == b); }

private:
    static mpfr_prec_t prec_clamp(mpfr_prec_t p) { return p < MPFR_PREC_MIN ? MPFR_PREC_MIN : p; }
    static mpfr_prec_t min_prec(const BigFloat& a, const BigFloat& b) {
        mpfr_prec_t pa = a.precision(), pb = b.precision();
        return pa < pb ? pa : pb;
    }
    mpfr_t v_;
};

BigFloat abs(const BigFloat& x);
BigFloat sqrt(const BigFloat& x); // DomainError on negative input
BigFloat exp(const BigFloat& x);
BigFloat log(const BigFloat& x); // DomainError on x <= 0
BigFloat sin(const BigFloat& x);
BigFloat cos(const BigFloat& x);
BigFloat atan2(const BigFloat& y, const BigFloat& x);
BigFloat pow_si(const BigFloat& x, long e);
BigFloat hypot(const BigFloat& x, const BigFloat& y);

} // namespace gvd
