#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <thread>
#include <vector>

#include "gvd/exact.hpp"

using namespace gvd;

namespace {

// Independent Bernoulli oracle: Akiyama-Tanigawa transform.  Produces the
// B_1 = +1/2 convention, so flip the sign at n = 1 to compare.
Rational bernoulli_at(unsigned n) {
    std::vector<Rational> a(n + 1);
    for (unsigned j = 0; j <= n; ++j) a[j] = Rational(1, j + 1);
    for (unsigned m = 1; m <= n; ++m)
        for (unsigned j = 0; j + m <= n; ++j) a[j] = Rational(j + 1) * (a[j] - a[j + 1]);
    if (n == 1) return -a[0];
    return a[0];
}

Integer sigma1_bruteforce(unsigned long n) {
    Integer acc(0);
    for (unsigned long d = 1; d <= n; ++d)
        if (n % d == 0) acc += d;
    return acc;
}

Rational w_direct(unsigned m, unsigned long n) {
    Rational acc(0);
    for (unsigned long s = 1; s < n; ++s)
        acc += Rational(n - s) * Rational(pow_int(Integer(s), 2 * m));
    return acc;
}

} // namespace

TEST_CASE("bernoulli matches Akiyama-Tanigawa oracle") {
    for (unsigned n = 0; n <= 40; ++n) CHECK(bernoulli(n) == bernoulli_at(n));
}

TEST_CASE("bernoulli pinned values, both conventions") {
    CHECK(bernoulli(0) == Rational(1));
    CHECK(bernoulli(1) == Rational(-1, 2));
    CHECK(bernoulli(2) == Rational(1, 6));
    CHECK(bernoulli(3) == 0);
    CHECK(bernoulli(4) == Rational(-1, 30));
    CHECK(bernoulli(7) == 0);
    CHECK(bernoulli(8) == Rational(-1, 30));
    CHECK(bernoulli(10) == Rational(5, 66));
    CHECK(bernoulli(12) == Rational(-691, 2730));

    CHECK(bernoulli(1, BernoulliConvention::classical_abs) == Rational(1, 6));
    CHECK(bernoulli(2, BernoulliConvention::classical_abs) == Rational(1, 30));
    CHECK(bernoulli(3, BernoulliConvention::classical_abs) == Rational(1, 42));
    CHECK(bernoulli(6, BernoulliConvention::classical_abs) == Rational(691, 2730));
    CHECK_THROWS_AS(bernoulli(0, BernoulliConvention::classical_abs), DomainError);
}

TEST_CASE("cache is consistent under concurrent growth") {
    std::vector<std::thread> pool;
    std::vector<Rational> out(8);
    for (int t = 0; t < 8; ++t)
        pool.emplace_back([&out, t] { out[t] = bernoulli(400); });
    for (auto& th : pool) th.join();
    for (int t = 1; t < 8; ++t) CHECK(out[t] == out[0]);
    CHECK(out[0] != 0);
}

TEST_CASE("zeta_int closed forms at even positive arguments") {
    ExactScalar z2 = zeta_int(2);
    CHECK(z2.coeff() == Rational(1, 6));
    CHECK(z2.pi_power() == 2);
    CHECK(z2.i_power() == 0);
    CHECK(zeta_int(4).coeff() == Rational(1, 90));
    CHECK(zeta_int(6).coeff() == Rational(1, 945));
    CHECK(zeta_int(8).coeff() == Rational(1, 9450));
    CHECK(zeta_int(10).coeff() == Rational(1, 93555));
}

TEST_CASE("zeta_int against partial-sum oracle") {
    // Euler-Maclaurin tail through the 1/2 N^-s and s/12 N^-s-1 terms keeps
    // the oracle error well below the comparison tolerance.
    const double pi = std::acos(-1.0);
    for (long s : {2L, 4L, 6L, 8L, 10L}) {
        double acc = 0.0;
        const double N = 20000.0;
        for (double n = 1; n <= N; ++n) acc += std::pow(n, -double(s));
        acc += std::pow(N, 1.0 - double(s)) / (double(s) - 1.0) - 0.5 * std::pow(N, -double(s)) +
               double(s) / 12.0 * std::pow(N, -double(s) - 1.0);
        double closed = zeta_int(s).coeff().get_d() * std::pow(pi, double(s));
        CHECK(std::fabs(acc - closed) / closed < 1e-10);
    }
}

TEST_CASE("zeta_int at zero and negative integers") {
    CHECK(zeta_int(0) == ExactScalar(Rational(-1, 2)));
    CHECK(zeta_int(-1) == ExactScalar(Rational(-1, 12)));
    CHECK(zeta_int(-2).is_zero());
    CHECK(zeta_int(-3) == ExactScalar(Rational(1, 120)));
    CHECK(zeta_int(-4).is_zero());
    CHECK(zeta_int(-5) == ExactScalar(Rational(-1, 252)));
    CHECK(zeta_int(-7) == ExactScalar(Rational(1, 240)));
    CHECK_THROWS_AS(zeta_int(1), DomainError);
    CHECK_THROWS_AS(zeta_int(3), DomainError);
    CHECK_THROWS_AS(zeta_int(9), DomainError);
}

TEST_CASE("ExactScalar normal form folds i^2 = -1") {
    CHECK(ExactScalar(Rational(1), 0, 2) == ExactScalar(Rational(-1)));
    CHECK(ExactScalar(Rational(1), 0, 3) == ExactScalar(Rational(-1), 0, 1));
    CHECK(ExactScalar(Rational(1), 0, 4) == ExactScalar(Rational(1)));
    CHECK(ExactScalar(Rational(2), 3, -1) == ExactScalar(Rational(-2), 3, 1));
    ExactScalar z;
    CHECK(z.is_zero());
    CHECK((z + ExactScalar(Rational(5), 2, 1)) == ExactScalar(Rational(5), 2, 1));
    // 1/i = -i
    CHECK((ExactScalar(1) / ExactScalar(Rational(1), 0, 1)) == ExactScalar(Rational(-1), 0, 1));
}

TEST_CASE("ExactScalar rejects cross-monomial addition") {
    ExactScalar a(Rational(1), 2, 0);
    ExactScalar b(Rational(1), 0, 0);
    ExactScalar c(Rational(1), 2, 1);
    CHECK_THROWS_AS(a + b, DomainError);
    CHECK_THROWS_AS(a + c, DomainError);
    CHECK((a + a) == ExactScalar(Rational(2), 2, 0));
    CHECK((a - a).is_zero());
    CHECK((a * c) == ExactScalar(Rational(1), 4, 1));
}

TEST_CASE("ExactScalar rendering") {
    CHECK(ExactScalar().str() == "0");
    CHECK(ExactScalar(Rational(-1, 57600)).str() == "-1/57600");
    CHECK(ExactScalar(Rational(1, 6), 2).str() == "(1/6)*pi^2");
    CHECK(ExactScalar(Rational(1, 120), 0, 1).str() == "(1/120)*i");
    CHECK(ExactScalar(Rational(1), 1, 0).str() == "pi");
    CHECK(ExactScalar(Rational(-1), 0, 1).str() == "-i");
}

TEST_CASE("sigma1 against brute-force enumeration") {
    for (unsigned long n = 1; n <= 2000; ++n) CHECK(sigma1(n) == sigma1_bruteforce(n));
    CHECK(sigma1(1) == 1);
    CHECK(sigma1(6) == 12);
    CHECK(sigma1(12) == 28);
    CHECK(sigma1(28) == 56);
    CHECK_THROWS_AS(sigma1(0), DomainError);
}

TEST_CASE("faulhaber polynomials reproduce direct power sums") {
    for (unsigned p = 0; p <= 8; ++p) {
        Poly s = faulhaber_poly(p);
        CHECK(s.degree() == long(p) + 1);
        Rational acc(0);
        for (unsigned long m = 1; m <= 50; ++m) {
            acc += Rational(pow_int(Integer(m), p));
            CHECK(s.eval(Rational(m)) == acc);
        }
        CHECK(s.eval(Rational(0)) == 0);
    }
}

TEST_CASE("weighted_power_sum matches the defining double loop") {
    for (unsigned m = 0; m <= 6; ++m) {
        Poly w = weighted_power_sum(m);
        for (unsigned long n = 1; n <= 30; ++n) CHECK(w.eval(Rational(n)) == w_direct(m, n));
    }
}

TEST_CASE("weighted_power_sum pinned values and parity") {
    CHECK(weighted_power_sum(0).eval(Rational(3)) == 3);
    CHECK(weighted_power_sum(1).eval(Rational(4)) == 20);

    Poly w2 = weighted_power_sum(2);
    CHECK(w2.coeff(2) == Rational(1, 20));
    CHECK(w2.coeff(4) == Rational(-1, 12));
    CHECK(w2.coeff(6) == Rational(1, 30));

    Poly w3 = weighted_power_sum(3);
    CHECK(w3.coeff(2) == Rational(-5, 84));
    CHECK(w3.coeff(4) == Rational(1, 8));
    CHECK(w3.coeff(6) == Rational(-1, 12));
    CHECK(w3.coeff(8) == Rational(1, 56));

    // only even powers of N survive for m >= 1
    for (unsigned m = 1; m <= 6; ++m) {
        Poly w = weighted_power_sum(m);
        CHECK(w.degree() == 2 * long(m) + 2);
        for (size_t k = 1; k < w.coeffs.size(); k += 2) CHECK(w.coeffs[k] == 0);
    }
}

TEST_CASE("chi_g equals zeta(1-2g)/(2-2g)") {
    for (unsigned g = 2; g <= 12; ++g) {
        Rational lhs = chi_g(g);
        Rational rhs = zeta_int(1 - 2 * long(g)).to_rational() / Rational(2 - 2 * long(g));
        CHECK(lhs == rhs);
    }
    CHECK(chi_g(2) == Rational(-1, 240));
    CHECK(chi_g(3) == Rational(1, 1008));
    CHECK(chi_g(4) == Rational(-1, 1440));
    CHECK_THROWS_AS(chi_g(1), DomainError);
}

TEST_CASE("hodge_c3 is rational with pinned low-genus values") {
    for (unsigned g = 2; g <= 10; ++g) CHECK(hodge_c3(g).is_rational());
    CHECK(hodge_c3(2) == ExactScalar(Rational(1, 2880)));
    CHECK(hodge_c3(3) == ExactScalar(Rational(1, 725760)));
    CHECK(hodge_c3(4) == ExactScalar(Rational(1, 43545600)));
    CHECK_THROWS_AS(hodge_c3(1), DomainError);
}
