#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "gvd/errors.hpp"

namespace gvd {

// Exact rational scalar.  mpq_class keeps values canonical (reduced, positive
// denominator), which the equality tests rely on.
using Rational = mpq_class;
using Integer = mpz_class;

inline Integer factorial(unsigned long n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline Integer binomial(unsigned long n, unsigned long k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline Integer pow_int(const Integer& b, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

// mpq_class does not canonicalize two-argument construction; this does.
inline Rational rational_frac(long num, long den) {
    if (den == 0) throw DomainError("rational_frac: zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational pow_rat(const Rational& b, long e) {
    if (e == 0) return Rational(1);
    Rational r;
    unsigned long a = static_cast<unsigned long>(e < 0 ? -e : e);
    mpz_pow_ui(r.get_num_mpz_t(), b.get_num().get_mpz_t(), a);
    mpz_pow_ui(r.get_den_mpz_t(), b.get_den().get_mpz_t(), a);
    if (e < 0) {
        if (b == 0) throw DomainError("pow_rat: negative power of zero");
        r = 1 / r;
    }
    r.canonicalize();
    return r;
}

// "n/d" or "n"; throws UsageError on anything else (including d = 0).
inline Rational parse_rational(const std::string& s) {
    if (s.empty()) throw UsageError("parse_rational: empty string");
    for (char c : s) {
        if (!(c == '-' || c == '+' || c == '/' || (c >= '0' && c <= '9')))
            throw UsageError("parse_rational: bad character in '" + s + "'");
    }
    Rational r;
    if (r.set_str(s, 10) != 0)
        throw UsageError("parse_rational: cannot parse '" + s + "'");
    if (r.get_den() == 0) throw UsageError("parse_rational: zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

// Dense polynomial with rational coefficients, coeffs[k] on x^k.
// Trailing zeros trimmed so degree() is honest.
struct Poly {
    std::vector<Rational> coeffs;

    void trim() {
        while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    }
    long degree() const { return static_cast<long>(coeffs.size()) - 1; }
    Rational coeff(size_t k) const { return k < coeffs.size() ? coeffs[k] : Rational(0); }

    Rational eval(const Rational& x) const {
        Rational acc(0);
        for (size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
        return acc;
    }
};

inline Poly operator+(const Poly& a, const Poly& b) {
    Poly r = a;
    if (b.coeffs.size() > r.coeffs.size()) r.coeffs.resize(b.coeffs.size(), Rational(0));
    for (size_t k = 0; k < b.coeffs.size(); ++k) r.coeffs[k] += b.coeffs[k];
    r.trim();
    return r;
}

inline Poly operator-(const Poly& a, const Poly& b) {
    Poly r = a;
    if (b.coeffs.size() > r.coeffs.size()) r.coeffs.resize(b.coeffs.size(), Rational(0));
    for (size_t k = 0; k < b.coeffs.size(); ++k) r.coeffs[k] -= b.coeffs[k];
    r.trim();
    return r;
}

inline Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    if (a.coeffs.empty() || b.coeffs.empty()) return r;
    r.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, Rational(0));
    for (size_t i = 0; i < a.coeffs.size(); ++i)
        for (size_t j = 0; j < b.coeffs.size(); ++j) r.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
    r.trim();
    return r;
}

inline Poly operator*(const Rational& c, const Poly& p) {
    Poly r = p;
    for (auto& x : r.coeffs) x *= c;
    r.trim();
    return r;
}

// p(x + shift), by Horner on the shifted variable.
inline Poly poly_shift(const Poly& p, const Rational& shift) {
    Poly r;
    Poly lin;
    lin.coeffs = {shift, Rational(1)};
    for (size_t k = p.coeffs.size(); k-- > 0;) {
        r = r * lin;
        Poly c;
        c.coeffs = {p.coeffs[k]};
        r = r + c;
    }
    return r;
}

} // namespace gvd
