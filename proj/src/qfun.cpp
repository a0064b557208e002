// Eta and negative-order polylogs.
//
// Li_{-m} closed forms are generated by the ladder Li_{-(m+1)} = q d/dq Li_{-m}
// starting from Li_{-1}(q) = q/(1-q)^2.  Writing Li_{-m} = P_m(q)/(1-q)^{m+1},
// the ladder becomes  P_{m+1} = q [ (1-q) P_m' + (m+1) P_m ],  which is what
// the recurrence below implements (exact polynomial arithmetic).

#include "gvd/qfun.hpp"

#include <map>
#include <mutex>

namespace gvd {

RationalSeries euler_product_series(unsigned terms) {
    if (terms < 1) throw DomainError("euler_product_series: terms must be >= 1");
    std::vector<Rational> one{Rational(1)};
    RationalSeries acc("q", terms, one);
    for (unsigned n = 1; n <= terms; ++n) {
        std::vector<Rational> f(terms + 1, Rational(0));
        f[0] = 1;
        if (n <= terms) f[n] = -1;
        acc = acc * RationalSeries("q", terms, std::move(f));
    }
    return acc;
}

BigComplex dedekind_eta(const BigComplex& tau, unsigned terms, mpfr_prec_t prec) {
    if (terms < 1) throw DomainError("dedekind_eta: terms must be >= 1");
    if (!(tau.im().sign() > 0))
        throw DomainError("dedekind_eta: Im(tau) must be positive, got " + tau.str(8));

    BigFloat two_pi = BigFloat::pi(prec) + BigFloat::pi(prec);
    BigComplex tau_p = tau.at_precision(prec);
    BigComplex itau(-tau_p.im(), tau_p.re());
    BigComplex x = scale(itau, two_pi); // 2 pi i tau
    BigComplex q = exp(x);
    BigComplex acc = exp(scale(x, BigFloat::from_rational(Rational(1, 24), prec)));
    BigComplex qn(BigFloat::from_long(1, prec), BigFloat(prec));
    BigComplex one = qn;
    for (unsigned n = 1; n <= terms; ++n) {
        qn *= q;
        acc *= (one - qn);
    }
    return acc;
}

namespace {

// P_m cache; grown under lock, returned by value.
std::mutex p_lock;
std::vector<Poly> p_cache;

Poly polylog_numerator_locked(unsigned m) {
    if (p_cache.empty()) {
        Poly p1;
        p1.coeffs = {Rational(0), Rational(1)}; // P_1 = q
        p_cache.push_back(p1);
    }
    while (p_cache.size() < m) {
        const Poly& pm = p_cache.back();
        unsigned cur = static_cast<unsigned>(p_cache.size()); // pm = P_cur
        // P_{cur+1} = q [ (1-q) P'_cur + (cur+1) P_cur ]
        Poly dp;
        dp.coeffs.assign(pm.coeffs.size() > 1 ? pm.coeffs.size() - 1 : 1, Rational(0));
        for (size_t k = 1; k < pm.coeffs.size(); ++k) dp.coeffs[k - 1] = Rational(k) * pm.coeffs[k];
        dp.trim();
        Poly one_minus_q;
        one_minus_q.coeffs = {Rational(1), Rational(-1)};
        Poly inner = one_minus_q * dp + Rational(cur + 1) * pm;
        Poly q_poly;
        q_poly.coeffs = {Rational(0), Rational(1)};
        p_cache.push_back(q_poly * inner);
    }
    return p_cache[m - 1];
}

void check_order(unsigned m) {
    if (m < 1 || m % 2 == 0)
        throw DomainError("polylog_neg: order must be odd and >= 1, got " + std::to_string(m));
}

} // namespace

Poly polylog_neg_numerator(unsigned m) {
    if (m < 1) throw DomainError("polylog_neg_numerator: m must be >= 1");
    std::lock_guard<std::mutex> g(p_lock);
    return polylog_numerator_locked(m);
}

Rational polylog_neg(unsigned m, const Rational& q) {
    check_order(m);
    if (q == 1) throw DomainError("polylog_neg: pole at q = 1");
    Poly p = polylog_neg_numerator(m);
    return p.eval(q) / pow_rat(Rational(1) - q, m + 1);
}

BigComplex polylog_neg(unsigned m, const BigComplex& q) {
    check_order(m);
    mpfr_prec_t prec = q.precision();
    BigFloat one = BigFloat::from_long(1, prec);
    BigFloat r = abs(q);
    // closed form continues to the unit circle; beyond it the instanton-sum
    // reading is gone, so refuse loudly rather than return a continuation
    BigFloat slack = BigFloat::from_double(1e-12, prec);
    if (r > one + slack)
        throw DomainError("polylog_neg: |q| > 1 is outside the instanton domain, |q| = " +
                          r.str(8));
    BigComplex one_c(one, BigFloat(prec));
    BigComplex d = one_c - q;
    if (abs(d) < BigFloat::pow2(-(long)(prec / 2), prec))
        throw DomainError("polylog_neg: q too close to the pole at 1");
    Poly p = polylog_neg_numerator(m);
    // Horner at complex q
    BigComplex acc{BigFloat(prec), BigFloat(prec)};
    for (size_t k = p.coeffs.size(); k-- > 0;) {
        acc = acc * q;
        acc += BigComplex(BigFloat::from_rational(p.coeffs[k], prec), BigFloat(prec));
    }
    return acc / pow_si(d, static_cast<long>(m) + 1);
}

MuExpansion polylog_neg_mu_coeffs(unsigned g, unsigned jmax) {
    if (g < 2) throw DomainError("polylog_neg_mu_coeffs: g must be >= 2");
    MuExpansion e;
    e.gamma_factor = ExactScalar(Rational(factorial(2 * g - 3)));
    e.polar_power = 2 - 2 * static_cast<long>(g);
    e.taylor.reserve(jmax + 1);
    for (unsigned j = 0; j <= jmax; ++j) {
        ExactScalar z = zeta_int(3 - 2 * static_cast<long>(g) - static_cast<long>(j));
        e.taylor.push_back(z / ExactScalar(Rational(factorial(j))));
    }
    return e;
}

} // namespace gvd
