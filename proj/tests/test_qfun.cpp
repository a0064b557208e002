#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "gvd/qfun.hpp"

using namespace gvd;

namespace {

// Pentagonal-number oracle: prod (1 - q^n) = sum_k (-1)^k q^{k(3k-1)/2}
// over all integers k.
int pentagonal_coeff(unsigned n) {
    for (long k = -40; k <= 40; ++k) {
        long e = k * (3 * k - 1) / 2;
        if (e == static_cast<long>(n)) return (k % 2 == 0) ? 1 : -1;
    }
    return 0;
}

BigComplex unit_circle_point(long num, long den, mpfr_prec_t prec) {
    BigFloat ang = BigFloat::pi(prec) * BigFloat::from_rational(rational_frac(num, den), prec);
    return BigComplex(cos(ang), sin(ang));
}

} // namespace

TEST_CASE("euler product matches the pentagonal-number expansion") {
    RationalSeries e = euler_product_series(40);
    for (unsigned n = 0; n <= 40; ++n) CHECK(e.coeff(n) == pentagonal_coeff(n));
    CHECK_THROWS_AS(euler_product_series(0), DomainError);
}

TEST_CASE("eta at the square point matches the quarter-gamma closed form") {
    const mpfr_prec_t prec = 256;
    BigComplex v = dedekind_eta(BigComplex::i(prec), 80, prec);

    // eta(i) = Gamma(1/4) / (2 pi^{3/4})
    BigFloat g14(prec);
    BigFloat quarter = BigFloat::from_rational(rational_frac(1, 4), prec);
    mpfr_gamma(g14.raw(), quarter.raw(), MPFR_RNDN);
    BigFloat pi = BigFloat::pi(prec);
    BigFloat pi34 = exp(BigFloat::from_rational(rational_frac(3, 4), prec) * log(pi));
    BigFloat want = g14 / (BigFloat::from_long(2, prec) * pi34);

    CHECK((abs(v.re() - want) / want).to_double() < 1e-60);
    CHECK(abs(v.im()).to_double() < 1e-70);
}

TEST_CASE("eta transform under inversion of the modulus") {
    const mpfr_prec_t prec = 256;
    struct Pt {
        double re, im;
    };
    for (Pt p : {Pt{0.0, 2.0}, Pt{0.5, 1.0}, Pt{0.0, 3.0}, Pt{-0.3, 0.7}}) {
        BigComplex tau = BigComplex::from_doubles(p.re, p.im, prec);
        BigComplex inv = -(BigComplex(BigFloat::from_long(1, prec)) / tau);
        BigFloat lhs = abs(dedekind_eta(inv, 220, prec));
        BigFloat rhs = sqrt(abs(tau)) * abs(dedekind_eta(tau, 220, prec));
        CHECK((abs(lhs - rhs) / rhs).to_double() < 1e-20);
    }
}

TEST_CASE("eta shift by one picks up the 24th-root phase") {
    const mpfr_prec_t prec = 256;
    BigComplex tau = BigComplex::from_doubles(0.3, 1.1, prec);
    BigComplex one(BigFloat::from_long(1, prec));
    BigComplex lhs = dedekind_eta(tau + one, 140, prec);
    BigFloat ang = BigFloat::pi(prec) / BigFloat::from_long(12, prec);
    BigComplex rhs = BigComplex(cos(ang), sin(ang)) * dedekind_eta(tau, 140, prec);
    CHECK((abs(lhs - rhs) / abs(rhs)).to_double() < 1e-60);
}

TEST_CASE("eta domain checks") {
    CHECK_THROWS_AS(dedekind_eta(BigComplex::from_doubles(0.5, 0.0), 10), DomainError);
    CHECK_THROWS_AS(dedekind_eta(BigComplex::from_doubles(0.5, -1.0), 10), DomainError);
    CHECK_THROWS_AS(dedekind_eta(BigComplex::i(), 0), DomainError);
}

TEST_CASE("negative polylog: closed form vs partial sums, exact arithmetic") {
    // Li_{-m}(q) = sum n^m q^n.  The n > 200 tail at |q| <= 1/2 is below
    // 10^{-30} by orders of magnitude.
    Rational bound = Rational(1) / Rational(pow_int(Integer(10), 30));
    for (unsigned m : {1u, 3u, 5u, 7u}) {
        for (Rational q : {rational_frac(1, 2), rational_frac(-1, 2), rational_frac(1, 3),
                           rational_frac(-2, 5)}) {
            Rational partial(0);
            Rational qn(1);
            for (unsigned long n = 1; n <= 200; ++n) {
                qn *= q;
                partial += Rational(pow_int(Integer(n), m)) * qn;
            }
            Rational diff = polylog_neg(m, q) - partial;
            if (diff < 0) diff = -diff;
            CHECK(diff < bound);
        }
    }
}

TEST_CASE("negative polylog pinned rational values") {
    CHECK(polylog_neg(1, rational_frac(1, 2)) == Rational(2));
    CHECK(polylog_neg(3, rational_frac(1, 2)) == Rational(26));
    CHECK(polylog_neg(5, rational_frac(1, 2)) == Rational(1082));
    // the closed form continues past the unit disc in exact arithmetic
    CHECK(polylog_neg(1, Rational(2)) == Rational(2));
}

TEST_CASE("negative polylog against the sinh closed form") {
    const mpfr_prec_t prec = 256;
    // Li_{-1}(e^mu) = 1 / (4 sinh^2(mu/2))
    for (long num : {-3L, -10L, -1L}) {
        BigFloat mu = BigFloat::from_rational(rational_frac(num, 8), prec);
        BigComplex got = polylog_neg(1, exp(BigComplex(mu)));
        BigFloat half = mu / BigFloat::from_long(2, prec);
        BigFloat sh = (exp(half) - exp(-half)) / BigFloat::from_long(2, prec);
        BigFloat want = BigFloat::from_long(1, prec) / (BigFloat::from_long(4, prec) * sh * sh);
        CHECK((abs(got - BigComplex(want)) / abs(want)).to_double() < 1e-70);
    }
}

TEST_CASE("negative polylog on the unit circle") {
    const mpfr_prec_t prec = 256;
    // Li_{-1}(e^{i pi/3}) = -1/(4 sin^2(pi/6)) = -1
    BigComplex v = polylog_neg(1, unit_circle_point(1, 3, prec));
    CHECK(abs(v - BigComplex(BigFloat::from_long(-1, prec))).to_double() < 1e-70);

    // exact and numeric overloads agree off the axis
    BigComplex q = unit_circle_point(2, 5, prec);
    BigComplex a = polylog_neg(3, q);
    Poly p = polylog_neg_numerator(3);
    BigComplex acc(prec);
    for (size_t k = p.coeffs.size(); k-- > 0;) {
        acc = acc * q;
        acc += BigComplex(BigFloat::from_rational(p.coeff(k), prec), BigFloat(prec));
    }
    BigComplex one(BigFloat::from_long(1, prec));
    BigComplex b = acc / (pow_si(one - q, 4));
    CHECK(abs(a - b).to_double() < 1e-70);
}

TEST_CASE("negative polylog domain checks") {
    CHECK_THROWS_AS(polylog_neg(2, rational_frac(1, 2)), DomainError); // even order
    CHECK_THROWS_AS(polylog_neg(0, rational_frac(1, 2)), DomainError);
    CHECK_THROWS_AS(polylog_neg(1, Rational(1)), DomainError); // pole
    CHECK_THROWS_AS(polylog_neg(1, BigComplex::from_doubles(1.5, 0.0)), DomainError); // |q| > 1
    CHECK_THROWS_AS(polylog_neg(1, BigComplex(BigFloat::from_long(1))), DomainError); // pole
}

TEST_CASE("numerator polynomials carry the Eulerian triangle") {
    Poly p1 = polylog_neg_numerator(1);
    CHECK(p1.degree() == 1);
    CHECK(p1.coeff(1) == 1);

    Poly p3 = polylog_neg_numerator(3);
    CHECK(p3.coeff(1) == 1);
    CHECK(p3.coeff(2) == 4);
    CHECK(p3.coeff(3) == 1);

    Poly p5 = polylog_neg_numerator(5);
    CHECK(p5.coeff(1) == 1);
    CHECK(p5.coeff(2) == 26);
    CHECK(p5.coeff(3) == 66);
    CHECK(p5.coeff(4) == 26);
    CHECK(p5.coeff(5) == 1);

    // row sums are m!
    for (unsigned m : {1u, 3u, 5u, 7u, 9u})
        CHECK(polylog_neg_numerator(m).eval(Rational(1)) == Rational(factorial(m)));
}

TEST_CASE("mu-expansion: factorial polar term and zeta Taylor tail") {
    MuExpansion e2 = polylog_neg_mu_coeffs(2, 6);
    CHECK(e2.gamma_factor == ExactScalar(1)); // 1!
    CHECK(e2.polar_power == -2);
    CHECK(e2.taylor.size() == 7);
    CHECK(e2.taylor[0] == ExactScalar(rational_frac(-1, 12)));
    CHECK(e2.taylor[1].is_zero());
    CHECK(e2.taylor[2] == ExactScalar(rational_frac(1, 240)));

    MuExpansion e3 = polylog_neg_mu_coeffs(3, 4);
    CHECK(e3.gamma_factor == ExactScalar(6)); // 3!
    CHECK(e3.polar_power == -4);
    CHECK(e3.taylor[0] == ExactScalar(rational_frac(1, 120)));

    CHECK_THROWS_AS(polylog_neg_mu_coeffs(1, 4), DomainError);
}

TEST_CASE("mu-expansion resums to the closed form near the origin") {
    const mpfr_prec_t prec = 256;
    MuExpansion e = polylog_neg_mu_coeffs(2, 14);
    BigFloat mu = BigFloat::from_rational(rational_frac(-1, 8), prec);
    BigComplex direct = polylog_neg(1, exp(BigComplex(mu)));

    BigFloat acc = to_bigcomplex(e.gamma_factor, prec).re() * pow_si(mu, e.polar_power);
    BigFloat mp = BigFloat::from_long(1, prec);
    for (size_t j = 0; j < e.taylor.size(); ++j) {
        acc += to_bigcomplex(e.taylor[j], prec).re() * mp;
        mp *= mu;
    }
    CHECK((abs(direct - BigComplex(acc)) / abs(direct)).to_double() < 1e-20);
}
