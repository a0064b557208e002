#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "gvd/conifold.hpp"

using namespace gvd;

namespace {

double rel_diff(const BigFloat& a, const BigFloat& b) {
    BigFloat m = abs(a) > abs(b) ? abs(a) : abs(b);
    if (m.is_zero()) return 0.0;
    return (abs(a - b) / m).to_double();
}

BigComplex unit_circle_point(long num, long den, mpfr_prec_t prec) {
    BigFloat ang = BigFloat::pi(prec) * BigFloat::from_rational(rational_frac(num, den), prec);
    return BigComplex(cos(ang), sin(ang));
}

} // namespace

TEST_CASE("coupling pair from a level-rank point") {
    CSPoint p{3, 9, 256};
    CouplingPair c = coupling(p);
    BigFloat want = BigFloat::pi(256) / BigFloat::from_long(6, 256); // 2 pi / 12
    CHECK(rel_diff(c.lambda.re(), want) < 1e-70);
    CHECK(c.lambda.im().is_zero());
    CHECK(c.t.re().is_zero());
    CHECK(rel_diff(c.t.im(), BigFloat::from_long(3, 256) * want) < 1e-70);
}

TEST_CASE("rank one is exactly trivial") {
    for (unsigned k : {1u, 2u, 5u, 17u}) {
        BigComplex z = cs_partition(CSPoint{1, k, 256});
        CHECK(z.re() == BigFloat::from_long(1, 256));
        CHECK(z.im().is_zero());
    }
}

TEST_CASE("pinned partition moduli at rank two") {
    const mpfr_prec_t prec = 256;
    BigComplex z22 = cs_partition(CSPoint{2, 2, prec});
    BigFloat half = BigFloat::from_rational(rational_frac(1, 2), prec);
    CHECK(rel_diff(abs(z22), half) < 1e-70);
    CHECK(rel_diff(z22.re(), z22.im()) < 1e-70); // phase pi/4

    BigComplex z21 = cs_partition(CSPoint{2, 1, prec});
    BigFloat inv_sqrt2 = BigFloat::from_long(1, prec) / sqrt(BigFloat::from_long(2, prec));
    CHECK(rel_diff(abs(z21), inv_sqrt2) < 1e-70);
}

TEST_CASE("partition value is stable under precision doubling") {
    BigComplex lo = cs_partition(CSPoint{5, 20, 256});
    BigComplex hi = cs_partition(CSPoint{5, 20, 512});
    CHECK((abs(lo - hi.at_precision(256)) / abs(hi.at_precision(256))).to_double() < 1e-70);
}

TEST_CASE("free energy at (2,2) and the branch winding ladder") {
    const mpfr_prec_t prec = 256;
    FreeEnergy f = cs_free_energy(CSPoint{2, 2, prec});
    BigFloat log2 = log(BigFloat::from_long(2, prec));
    BigFloat quarter_pi = BigFloat::pi(prec) / BigFloat::from_long(4, prec);
    CHECK(rel_diff(f.value.re(), log2) < 1e-70);
    CHECK(rel_diff(f.value.im(), -quarter_pi) < 1e-70);
    CHECK(f.winding == 0);

    // phase pi N(N-1)/8 reduced into (-pi, pi]: the dropped 2 pi count
    CHECK(cs_free_energy(CSPoint{5, 3, prec}).winding == 1);
    CHECK(cs_free_energy(CSPoint{7, 3, prec}).winding == 3);
    FreeEnergy f8 = cs_free_energy(CSPoint{8, 3, prec});
    CHECK(f8.winding == 4);
    CHECK(rel_diff(f8.value.im(), BigFloat::pi(prec)) < 1e-70); // principal edge +pi
}

TEST_CASE("free energy exponentiates back to the partition value") {
    const mpfr_prec_t prec = 320;
    for (unsigned N : {2u, 3u, 5u, 7u}) {
        CSPoint p{N, 2 * N + 1, prec};
        FreeEnergy f = cs_free_energy(p);
        BigComplex z = cs_partition(p);
        CHECK((abs(exp(-f.value) - z) / abs(z)).to_double() < 1e-70);
    }
}

TEST_CASE("point validation") {
    CHECK_THROWS_AS(cs_partition(CSPoint{0, 3, 256}), UsageError);
    CHECK_THROWS_AS(cs_partition(CSPoint{3, 0, 256}), UsageError);
}

TEST_CASE("coefficient-level duality holds exactly genus by genus") {
    for (unsigned g = 2; g <= 5; ++g) {
        for (unsigned n = 1; n <= 6; ++n) {
            DualityReport rep = duality_instanton_identity(g, n);
            CHECK(rep.kind == DualityReport::Kind::exact);
            CHECK(rep.equal);
            CHECK(!rep.convention_tag.empty());
            if (n % 2 == 1) {
                CHECK(rep.lhs_exact.is_zero());
                CHECK(rep.rhs_exact.is_zero());
            } else {
                CHECK(!rep.lhs_exact.is_zero());
            }
        }
    }
}

TEST_CASE("pinned duality coefficients at genus two") {
    CHECK(duality_instanton_identity(2, 2).lhs_exact == ExactScalar(rational_frac(-1, 57600)));
    CHECK(duality_instanton_identity(2, 2).rhs_exact == ExactScalar(rational_frac(-1, 57600)));
    CHECK(duality_instanton_identity(2, 4).lhs_exact == ExactScalar(rational_frac(-1, 1451520)));
    CHECK(duality_instanton_identity(2, 6).lhs_exact == ExactScalar(rational_frac(-1, 41472000)));
    CHECK_THROWS_AS(duality_instanton_identity(1, 2), UsageError);
    CHECK_THROWS_AS(duality_instanton_identity(2, 0), UsageError);
}

TEST_CASE("genus free energy exact rationals at q = 1/2") {
    CHECK(conifold_fg(2, rational_frac(1, 2)) == rational_frac(5, 576));
    CHECK(conifold_fg(3, rational_frac(1, 2)) == rational_frac(-3119, 725760));
    CHECK(conifold_fg(4, rational_frac(1, 2)) == rational_frac(54533, 8709120));
    CHECK_THROWS_AS(conifold_fg(1, rational_frac(1, 2)), UsageError);
    CHECK_THROWS_AS(conifold_fg(2, Rational(1)), DomainError);
}

TEST_CASE("genus free energy: numeric overload agrees with the exact one") {
    const mpfr_prec_t prec = 256;
    BigComplex qh(BigFloat::from_rational(rational_frac(1, 2), prec), BigFloat(prec));
    for (unsigned g : {2u, 3u, 4u}) {
        BigComplex num = conifold_fg(g, qh);
        BigFloat want = BigFloat::from_rational(conifold_fg(g, rational_frac(1, 2)), prec);
        CHECK((abs(num - BigComplex(want)) / abs(want)).to_double() < 1e-70);
        CHECK(num.im().is_zero());
    }

    // on the unit circle at the sixth root: Li_{-1}(e^{i pi/3}) = -1, so
    // F_2 = 1/2880 - 1/240 = -11/2880, real
    BigComplex f2 = conifold_fg(2, unit_circle_point(1, 3, prec));
    BigFloat want = BigFloat::from_rational(rational_frac(-11, 2880), prec);
    CHECK((abs(f2 - BigComplex(want)) / abs(want)).to_double() < 1e-70);
}

TEST_CASE("numeric fit on a rank-one family verifies the zero ladder") {
    GenusFitResult r = duality_numeric_fit(CSPoint{1, 5, 256}, 8, 2);
    for (const BigFloat& c : r.c) CHECK(abs(c).to_double() < 1e-60);
    CHECK(abs(r.log_coeff).to_double() < 1e-60);
    CHECK(r.reports.empty());
    CHECK(r.convention_tag.find("rank-1") != std::string::npos);
}

TEST_CASE("numeric fit extracts genus coefficients on a scaling family") {
    CSPoint base{3, 9, 384};
    GenusFitResult r3 = duality_numeric_fit(base, 8, 3);
    REQUIRE(r3.reports.size() == 2); // g = 2, 3
    CHECK(r3.reports[0].rel_dev.to_double() < 5e-2);

    // the log(lambda) column soaks up the measure sector with weight -1/12
    BigFloat twelfth = BigFloat::from_rational(rational_frac(-1, 12), 384);
    CHECK(abs(r3.log_coeff - twelfth).to_double() < 1e-3);

    GenusFitResult r2 = duality_numeric_fit(base, 8, 2);
    CHECK(r3.residual_rms < r2.residual_rms);

    CHECK_THROWS_AS(duality_numeric_fit(base, 4, 3), UsageError);
    CHECK_THROWS_AS(duality_numeric_fit(base, 8, 1), UsageError);
}

TEST_CASE("boundary generating pack accumulates and collapses") {
    GeneratingPack pack({"t"});
    pack.add({2}, ExactScalar(rational_frac(-1, 57600)));
    pack.add({4}, ExactScalar(rational_frac(1, 7)));
    pack.add({4}, ExactScalar(rational_frac(-1, 7))); // cancels
    pack.add({6}, ExactScalar());                     // explicit zero, not stored
    CHECK(pack.terms().size() == 1);

    TruncatedSeries<ExactScalar> s = pack.to_series(4);
    CHECK(s.coeff(0).is_zero());
    CHECK(s.coeff(2) == ExactScalar(rational_frac(-1, 57600)));
    CHECK(s.coeff(4).is_zero());

    CHECK_THROWS_AS(pack.add({1, 2}, ExactScalar(1)), UsageError);
    CHECK_THROWS_AS(pack.add({-1}, ExactScalar(1)), UsageError);
    CHECK_THROWS_AS(GeneratingPack(std::vector<std::string>{}), UsageError);

    GeneratingPack two({"t1", "t2"});
    two.add({1, 3}, ExactScalar(5));
    CHECK_THROWS_AS(two.to_series(4), UsageError);
    CHECK(two.terms().at(std::vector<long>{1, 3}) == ExactScalar(5));
}
