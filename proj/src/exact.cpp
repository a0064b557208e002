// Exact integer-sequence layer: Bernoulli numbers, integer zeta values,
// divisor sums, Faulhaber polynomials.
//
// Conventions pinned here:
//   * bernoulli(n) is the modern convention, B_1 = -1/2.  The defining
//     recurrence sum_{j=0}^{n} binom(n+1, j) B_j = 0 (n >= 1) is the source
//     of truth; the Akiyama-Tanigawa transform is kept in the tests as an
//     independent oracle.
//   * zeta(2m) = (-1)^(m+1) B_{2m} (2 pi)^(2m) / (2 (2m)!), stored as an
//     exact rational times pi^(2m).
//   * zeta(-n) = -B_{n+1}/(n+1) for n >= 1, zeta(0) = -1/2.

#include "gvd/exact.hpp"

namespace gvd {

ExactConstantsCache& ExactConstantsCache::instance() {
    static ExactConstantsCache c;
    return c;
}

void ExactConstantsCache::grow_upto(unsigned n) {
    if (b_.empty()) b_.push_back(Rational(1));
    for (unsigned m = static_cast<unsigned>(b_.size()); m <= n; ++m) {
        // B_m = -1/binom(m+1,1) * sum_{j=0}^{m-1} binom(m+1, j) B_j
        Rational acc(0);
        for (unsigned j = 0; j < m; ++j) acc += Rational(binomial(m + 1, j)) * b_[j];
        b_.push_back(-acc / Rational(m + 1));
    }
}

Rational ExactConstantsCache::bernoulli(unsigned n) {
    std::lock_guard<std::mutex> g(lock_);
    grow_upto(n);
    return b_[n];
}

ExactScalar ExactConstantsCache::zeta(long s) {
    if (s == 1) throw DomainError("zeta_int: pole at s = 1");
    if (s == 0) return ExactScalar(Rational(-1, 2));
    if (s < 0) {
        unsigned long n = static_cast<unsigned long>(-s);
        Rational b = bernoulli(static_cast<unsigned>(n + 1));
        return ExactScalar(-b / Rational(n + 1));
    }
    if (s % 2 != 0)
        throw DomainError("zeta_int: no closed form at odd s = " + std::to_string(s));
    unsigned long m = static_cast<unsigned long>(s) / 2;
    Rational b = bernoulli(static_cast<unsigned>(2 * m));
    Rational c = b * Rational(pow_int(Integer(2), 2 * m)) / (Rational(2) * Rational(factorial(2 * m)));
    if (m % 2 == 0) c = -c;
    return ExactScalar(c, s);
}

Rational bernoulli(unsigned n, BernoulliConvention conv) {
    switch (conv) {
    case BernoulliConvention::modern:
        return ExactConstantsCache::instance().bernoulli(n);
    case BernoulliConvention::classical_abs: {
        if (n == 0) throw DomainError("bernoulli: classical_abs starts at index 1");
        Rational b = ExactConstantsCache::instance().bernoulli(2 * n);
        return b < 0 ? Rational(-b) : b;
    }
    }
    throw DomainError("bernoulli: bad convention");
}

ExactScalar zeta_int(long s) { return ExactConstantsCache::instance().zeta(s); }

Integer sigma1(unsigned long n) {
    if (n == 0) throw DomainError("sigma1: n must be positive");
    Integer acc(0);
    for (unsigned long d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        acc += d;
        unsigned long q = n / d;
        if (q != d) acc += q;
    }
    return acc;
}

Poly faulhaber_poly(unsigned p) {
    // S_p(M) = 1/(p+1) sum_{j=0}^{p} binom(p+1, j) B_j^+ M^{p+1-j},
    // with B^+ the modern numbers except B_1^+ = +1/2.
    Poly r;
    r.coeffs.assign(p + 2, Rational(0));
    for (unsigned j = 0; j <= p; ++j) {
        Rational bj = bernoulli(j);
        if (j == 1) bj = -bj;
        if (bj == 0) continue;
        r.coeffs[p + 1 - j] = Rational(binomial(p + 1, j)) * bj / Rational(p + 1);
    }
    r.trim();
    return r;
}

Poly weighted_power_sum(unsigned m) {
    // sum_{s=1}^{N-1} (N - s) s^{2m} = N S_{2m}(N-1) - S_{2m+1}(N-1)
    Poly n_poly;
    n_poly.coeffs = {Rational(0), Rational(1)};
    Poly a = poly_shift(faulhaber_poly(2 * m), Rational(-1));
    Poly b = poly_shift(faulhaber_poly(2 * m + 1), Rational(-1));
    return n_poly * a - b;
}

Rational chi_g(unsigned g) {
    if (g < 2) throw DomainError("chi_g: defined for g >= 2");
    Rational mag = bernoulli(g, BernoulliConvention::classical_abs);
    Rational r = mag / (Rational(2 * g) * Rational(2 * g - 2));
    return (g % 2 == 0) ? -r : r; // (-1)^(g-1)
}

ExactScalar hodge_c3(unsigned g) {
    if (g < 2) throw DomainError("hodge_c3: defined for g >= 2");
    ExactScalar z = zeta_int(2 * static_cast<long>(g) - 2);
    ExactScalar sign(g % 2 == 0 ? Rational(-2) : Rational(2)); // (-1)^(g-1) * 2
    ExactScalar denom(Rational(pow_int(Integer(2), 2 * g - 2)), 2 * static_cast<long>(g) - 2);
    ExactScalar r = sign * z * ExactScalar(chi_g(g)) / denom;
    if (!r.is_rational())
        throw DomainError("hodge_c3: pi powers failed to cancel at g = " + std::to_string(g));
    return r;
}

} // namespace gvd
