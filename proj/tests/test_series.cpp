#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "gvd/series.hpp"

using namespace gvd;

namespace {

RationalSeries geometric(unsigned order) {
    std::vector<Rational> c(order + 1, Rational(1));
    return RationalSeries("q", order, std::move(c));
}

RationalSeries one_minus_q(unsigned order) {
    std::vector<Rational> c{Rational(1), Rational(-1)};
    return RationalSeries("q", order, std::move(c));
}

} // namespace

TEST_CASE("invert reproduces the geometric series") {
    RationalSeries inv = one_minus_q(12).invert();
    CHECK(inv == geometric(12));

    RationalSeries prod = inv * one_minus_q(12);
    CHECK(prod.coeff(0) == 1);
    for (unsigned k = 1; k <= 12; ++k) CHECK(prod.coeff(k) == 0);
}

TEST_CASE("log(1 - q) has coefficients -1/n") {
    RationalSeries lg = one_minus_q(10).log();
    CHECK(lg.coeff(0) == 0);
    for (unsigned n = 1; n <= 10; ++n) CHECK(lg.coeff(n) == rational_frac(-1, long(n)));
}

TEST_CASE("exp matches the Taylor coefficients of e^x") {
    RationalSeries x("x", 10, {Rational(0), Rational(1)});
    RationalSeries ex = x.exp();
    for (unsigned k = 0; k <= 10; ++k) CHECK(ex.coeff(k) == Rational(1) / Rational(factorial(k)));
}

TEST_CASE("exp and log are mutually inverse") {
    RationalSeries f("x", 9,
                     {Rational(1), rational_frac(3, 7), rational_frac(-2, 5), Rational(4),
                      rational_frac(1, 9), rational_frac(-5, 11)});
    CHECK(f.log().exp() == f);

    RationalSeries g("x", 8, {Rational(0), rational_frac(1, 3), Rational(-2), rational_frac(7, 2)});
    CHECK(g.exp().log() == g);
}

TEST_CASE("derivative then integrate returns the original") {
    RationalSeries f("q", 7,
                     {rational_frac(5, 2), Rational(-3), rational_frac(7, 4), Rational(0),
                      rational_frac(2, 9)});
    CHECK(f.derivative().integrate(f.coeff(0)) == f);
    CHECK(f.integrate(Rational(11)).derivative() == f);
}

TEST_CASE("square root via exp((1/2) log) squares back") {
    RationalSeries one_plus("x", 8, {Rational(1), Rational(1)});
    RationalSeries root = one_plus.log().scalar_mul(rational_frac(1, 2)).exp();
    CHECK(root * root == one_plus);
    // central binomial signature of the first few coefficients
    CHECK(root.coeff(1) == rational_frac(1, 2));
    CHECK(root.coeff(2) == rational_frac(-1, 8));
    CHECK(root.coeff(3) == rational_frac(1, 16));
}

TEST_CASE("compose: geometric series of x + x^2 generates Fibonacci numbers") {
    RationalSeries g("x", 10, {Rational(0), Rational(1), Rational(1)});
    RationalSeries fib = geometric(10).compose(g);
    const long want[] = {1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89};
    for (unsigned k = 0; k <= 10; ++k) CHECK(fib.coeff(k) == want[k]);
}

TEST_CASE("binary operations truncate to the smaller order") {
    RationalSeries a = geometric(10);
    RationalSeries b = geometric(6);
    CHECK((a + b).order() == 6);
    CHECK((a * b).order() == 6);
    CHECK((a - b).order() == 6);
    CHECK(a.truncate(3).order() == 3);
    CHECK(a.truncate(3).coeff(3) == 1);
}

TEST_CASE("domain preconditions throw with named defects") {
    RationalSeries f("q", 4, {Rational(2), Rational(1)});
    CHECK_THROWS_AS(f.log(), DomainError);      // constant term 2, need 1
    CHECK_THROWS_AS(f.exp(), DomainError);      // constant term 2, need 0
    CHECK_THROWS_AS(f.compose(f), DomainError); // inner constant term 2, need 0

    RationalSeries g("q", 4, {Rational(0), Rational(1)});
    CHECK_THROWS_AS(g.invert(), DomainError); // constant term 0

    RationalSeries h("x", 4, {Rational(2), Rational(1)});
    CHECK_THROWS_AS(f + h, DomainError); // variable mismatch
    CHECK_THROWS_AS(f * h, DomainError);

    CHECK_THROWS_AS(f.coeff(5), DomainError); // beyond tracked order
    CHECK_THROWS_AS(RationalSeries("q", 3, std::vector<Rational>{}), DomainError);
}

TEST_CASE("complex-coefficient series mirror the rational results") {
    const mpfr_prec_t prec = 128;
    auto mk = [&](long num, long den) {
        return BigComplex(BigFloat::from_rational(rational_frac(num, den), prec), BigFloat(prec));
    };
    std::vector<BigComplex> c{mk(0, 1), mk(1, 3), mk(-2, 1), mk(7, 2)};
    ComplexSeries g("x", 8, c);
    ComplexSeries eg = g.exp();

    RationalSeries gr("x", 8, {Rational(0), rational_frac(1, 3), Rational(-2), rational_frac(7, 2)});
    RationalSeries er = gr.exp();
    for (unsigned k = 0; k <= 8; ++k) {
        BigFloat want = BigFloat::from_rational(er.coeff(k), prec);
        CHECK(abs(eg.coeff(k).re() - want).to_double() < 1e-30);
        CHECK(eg.coeff(k).im().is_zero()); // real inputs stay exactly real
    }

    ComplexSeries back = eg.log();
    for (unsigned k = 0; k <= 8; ++k) {
        BigComplex want = k < c.size() ? c[k] : BigComplex(prec);
        CHECK(abs(back.coeff(k) - want).to_double() < 1e-30);
    }
}
