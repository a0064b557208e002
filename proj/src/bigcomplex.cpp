#include "gvd/bigcomplex.hpp"

namespace gvd {

std::string BigComplex::str(int digits) const {
    if (im_.is_zero()) return re_.str(digits);
    std::string im_part = im_.str(digits) + "i";
    if (re_.is_zero()) return im_part;
    std::string sep = (im_.sign() < 0) ? "" : "+";
    return re_.str(digits) + sep + im_part;
}

BigFloat abs(const BigComplex& z) { return hypot(z.re(), z.im()); }

BigFloat norm2(const BigComplex& z) { return z.re() * z.re() + z.im() * z.im(); }

BigComplex exp(const BigComplex& z) {
    BigFloat m = exp(z.re());
    return BigComplex(m * cos(z.im()), m * sin(z.im()));
}

BigComplex log(const BigComplex& z) {
    if (z.is_zero()) throw DomainError("log: zero argument");
    return BigComplex(log(abs(z)), atan2(z.im(), z.re()));
}

BigComplex sqrt(const BigComplex& z) {
    if (z.is_zero()) return z;
    // principal: sqrt(|z|) * exp(i arg/2)
    BigFloat r = sqrt(abs(z));
    BigFloat half = BigFloat::from_rational(Rational(1, 2), z.precision());
    BigFloat a = atan2(z.im(), z.re()) * half;
    return BigComplex(r * cos(a), r * sin(a));
}

BigComplex pow_si(const BigComplex& z, long e) {
    if (e == 0) return BigComplex(BigFloat::from_long(1, z.precision()), BigFloat(z.precision()));
    bool inv = e < 0;
    unsigned long n = static_cast<unsigned long>(inv ? -e : e);
    BigComplex acc(BigFloat::from_long(1, z.precision()), BigFloat(z.precision()));
    BigComplex base = z;
    while (n) {
        if (n & 1) acc *= base;
        base *= base;
        n >>= 1;
    }
    if (inv) return BigComplex(BigFloat::from_long(1, z.precision()), BigFloat(z.precision())) / acc;
    return acc;
}

BigComplex scale(const BigComplex& z, const BigFloat& s) {
    return BigComplex(z.re() * s, z.im() * s);
}

BigComplex to_bigcomplex(const ExactScalar& x, mpfr_prec_t prec) {
    BigFloat mag = BigFloat::from_rational(x.coeff(), prec);
    if (x.pi_power() != 0) mag *= pow_si(BigFloat::pi(prec), x.pi_power());
    if (x.i_power() == 0) return BigComplex(mag, BigFloat(prec));
    return BigComplex(BigFloat(prec), mag);
}

} // namespace gvd
