#pragma once

#include "gvd/bigfloat.hpp"
#include "gvd/exact_scalar.hpp"

namespace gvd {

// Complex scalar as a BigFloat pair.  Same min-precision rule as BigFloat.
// log() takes the principal branch, Im in (-pi, pi].
class BigComplex {
public:
    explicit BigComplex(mpfr_prec_t prec = BigFloat::default_prec) : re_(prec), im_(prec) {}
    BigComplex(BigFloat re, BigFloat im) : re_(std::move(re)), im_(std::move(im)) {}
    explicit BigComplex(BigFloat re) : re_(std::move(re)), im_(re_.precision()) {}

    static BigComplex from_doubles(double re, double im, mpfr_prec_t prec = BigFloat::default_prec) {
        return BigComplex(BigFloat::from_double(re, prec), BigFloat::from_double(im, prec));
    }
    static BigComplex i(mpfr_prec_t prec = BigFloat::default_prec) {
        return BigComplex(BigFloat(prec), BigFloat::from_long(1, prec));
    }

    const BigFloat& re() const { return re_; }
    const BigFloat& im() const { return im_; }
    BigComplex at_precision(mpfr_prec_t prec) const {
        return BigComplex(re_.at_precision(prec), im_.at_precision(prec));
    }
    mpfr_prec_t precision() const {
        return re_.precision() < im_.precision() ? re_.precision() : im_.precision();
    }
    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
    bool is_finite() const { return re_.is_finite() && im_.is_finite(); }

    BigComplex operator-() const { return BigComplex(-re_, -im_); }
    BigComplex conj() const { return BigComplex(re_, -im_); }

    friend BigComplex operator+(const BigComplex& a, const BigComplex& b) {
        return BigComplex(a.re_ + b.re_, a.im_ + b.im_);
    }
    friend BigComplex operator-(const BigComplex& a, const BigComplex& b) {
        return BigComplex(a.re_ - b.re_, a.im_ - b.im_);
    }
    friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
        return BigComplex(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
    }
    friend BigComplex operator/(const BigComplex& a, const BigComplex& b) {
        BigFloat n = b.re_ * b.re_ + b.im_ * b.im_;
        if (n.is_zero()) throw DomainError("BigComplex: division by zero");
        return BigComplex((a.re_ * b.re_ + a.im_ * b.im_) / n, (a.im_ * b.re_ - a.re_ * b.im_) / n);
    }
    BigComplex& operator+=(const BigComplex& o) { return *this = *this + o; }
    BigComplex& operator-=(const BigComplex& o) { return *this = *this - o; }
    BigComplex& operator*=(const BigComplex& o) { return *this = *this * o; }
    BigComplex& operator/=(const BigComplex& o) { return *this = *this / o; }

    friend bool operator==(const BigComplex& a, const BigComplex& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const BigComplex& a, const BigComplex& b) { return !(a == b); }

    // "a+bi" with both parts in decimal; omits a vanishing part.
    std::string str(int digits = 0) const;

private:
    BigFloat re_, im_;
};

BigFloat abs(const BigComplex& z);
BigFloat norm2(const BigComplex& z); // |z|^2
BigComplex exp(const BigComplex& z);
BigComplex log(const BigComplex& z); // principal branch; DomainError at 0
BigComplex sqrt(const BigComplex& z); // principal branch
BigComplex pow_si(const BigComplex& z, long e);
BigComplex scale(const BigComplex& z, const BigFloat& s);

// ExactScalar -> numeric value at the given precision.
BigComplex to_bigcomplex(const ExactScalar& x, mpfr_prec_t prec = BigFloat::default_prec);

} // namespace gvd
