#include "gvd/bigfloat.hpp"

#include <cstdio>
#include <memory>

namespace gvd {

BigFloat BigFloat::from_string(const std::string& s, mpfr_prec_t prec) {
    BigFloat r(prec);
    if (s.empty() || mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
        throw UsageError("BigFloat: cannot parse '" + s + "' as a decimal number");
    return r;
}

std::string BigFloat::str(int digits) const {
    if (digits <= 0) {
        // bits * log10(2), rounded up, plus a guard digit
        digits = static_cast<int>(static_cast<double>(precision()) * 0.30103) + 2;
    }
    char* out = nullptr;
    int n = mpfr_asprintf(&out, "%.*Rg", digits, v_);
    if (n < 0) throw NumericError("BigFloat: formatting failed");
    std::string s(out);
    mpfr_free_str(out);
    return s;
}

BigFloat abs(const BigFloat& x) {
    BigFloat r(x.precision());
    mpfr_abs(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}

BigFloat sqrt(const BigFloat& x) {
    if (x.sign() < 0) throw DomainError("sqrt: negative argument " + x.str(8));
    BigFloat r(x.precision());
    mpfr_sqrt(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}

BigFloat exp(const BigFloat& x) {
    BigFloat r(x.precision());
    mpfr_exp(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}

BigFloat log(const BigFloat& x) {
    if (x.sign() <= 0) throw DomainError("log: non-positive argument " + x.str(8));
    BigFloat r(x.precision());
    mpfr_log(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}

BigFloat sin(const BigFloat& x) {
    BigFloat r(x.precision());
    mpfr_sin(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}

BigFloat cos(const BigFloat& x) {
    BigFloat r(x.precision());
    mpfr_cos(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}

BigFloat atan2(const BigFloat& y, const BigFloat& x) {
    mpfr_prec_t p = y.precision() < x.precision() ? y.precision() : x.precision();
    BigFloat r(p);
    mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
    return r;
}

BigFloat pow_si(const BigFloat& x, long e) {
    BigFloat r(x.precision());
    mpfr_pow_si(r.raw(), x.raw(), e, MPFR_RNDN);
    return r;
}

BigFloat hypot(const BigFloat& x, const BigFloat& y) {
    mpfr_prec_t p = y.precision() < x.precision() ? y.precision() : x.precision();
    BigFloat r(p);
    mpfr_hypot(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
    return r;
}

} // namespace gvd
