#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "gvd/matrix_model.hpp"

using namespace gvd;

namespace {

constexpr mpfr_prec_t kPrec = 256;

PotentialSpec gaussian_w() { return PotentialSpec{{0.0, 0.0, 0.5}}; }

double rel_diff(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

} // namespace

TEST_CASE("Gaussian closed form: pinned values and validation") {
    BigFloat one = BigFloat::from_long(1, kPrec);
    BigFloat pi = BigFloat::pi(kPrec);

    // N = 2, lambda = 1: 2 pi^2
    BigFloat z2 = mm_gaussian_exact(2, one);
    CHECK(((abs(z2 - (pi * pi + pi * pi))) / z2).to_double() < 1e-70);

    // N = 1 reduces to the plain Gaussian integral sqrt(2 pi lambda)
    BigFloat lam = BigFloat::from_rational(rational_frac(3, 4), kPrec);
    BigFloat z1 = mm_gaussian_exact(1, lam);
    BigFloat want = sqrt((one + one) * pi * lam);
    CHECK(((abs(z1 - want)) / want).to_double() < 1e-70);

    CHECK_THROWS_AS(mm_gaussian_exact(0, one), UsageError);
    CHECK_THROWS_AS(mm_gaussian_exact(2, BigFloat(kPrec)), UsageError);
    CHECK_THROWS_AS(mm_gaussian_exact(2, -one), UsageError);
}

TEST_CASE("eigenvalue quadrature reproduces the Gaussian closed form") {
    PotentialSpec W = gaussian_w();
    const std::vector<std::pair<unsigned, double>> grid = {
        {1, 0.5}, {1, 1.0}, {1, 2.0}, {2, 0.5}, {2, 1.0}, {3, 1.0}};
    for (const auto& [N, lam] : grid) {
        double got = mm_eigen_z(W, N, lam);
        double want = mm_gaussian_exact(N, BigFloat::from_double(lam, kPrec)).to_double();
        CAPTURE(N);
        CAPTURE(lam);
        CHECK(rel_diff(got, want) < 1e-10);
    }
}

TEST_CASE("quartic perturbation matches second-order Wick expansion") {
    // W = x^2/2 + g x^4, N = 1, lambda = 1:
    //   Z / sqrt(2 pi) = 1 - 3 g + (105/2) g^2 - O(g^3), next term ~ 1.7e-9
    const double g = 1e-4;
    PotentialSpec W{{0.0, 0.0, 0.5, 0.0, g}};
    double z = mm_eigen_z(W, 1, 1.0);
    double ratio = z / std::sqrt(2.0 * std::numbers::pi);
    double expansion = 1.0 - 3.0 * g + 52.5 * g * g;
    CHECK(std::fabs(ratio - expansion) < 1e-8);
}

TEST_CASE("quadrature value is stable under a tighter tolerance") {
    PotentialSpec W = gaussian_w();
    double loose = mm_eigen_z(W, 2, 1.0, 1e-9);
    double tight = mm_eigen_z(W, 2, 1.0, 1e-11);
    CHECK(rel_diff(loose, tight) < 1e-8);
}

TEST_CASE("eigenvalue integral argument and domain guards") {
    PotentialSpec W = gaussian_w();
    CHECK_THROWS_AS(mm_eigen_z(W, 0, 1.0), UsageError);
    CHECK_THROWS_AS(mm_eigen_z(W, 5, 1.0), UsageError);
    CHECK_THROWS_AS(mm_eigen_z(W, 2, 0.0), UsageError);
    CHECK_THROWS_AS(mm_eigen_z(W, 2, -1.0), UsageError);

    PotentialSpec cubic{{0.0, 0.0, 0.0, 1.0}};
    CHECK_THROWS_AS(mm_eigen_z(cubic, 1, 1.0), NumericError); // non-confining

    CHECK_THROWS_AS(validate_potential(PotentialSpec{{1.0, 2.0}}), UsageError);
    CHECK_THROWS_AS(validate_potential(PotentialSpec{{0.0, 0.0, -1.0}}), UsageError);
    CHECK_THROWS_AS(mm_eigen_z(PotentialSpec{{1.0, 2.0}}, 1, 1.0), UsageError);
}

TEST_CASE("genus-basis fit interpolates a fixed 't Hooft family") {
    PotentialSpec W = gaussian_w();
    const std::vector<std::pair<unsigned, double>> family = {
        {1, 1.0}, {2, 0.5}, {3, 1.0 / 3.0}};
    ThooftFit fit = mm_thooft_fit(W, family, 2, 1e-9);
    REQUIRE(fit.c.size() == 3);
    REQUIRE(fit.data.size() == 3);
    REQUIRE(fit.fitted.size() == 3);
    // three points against three basis functions: exact interpolation up to
    // the linear solve
    CHECK(fit.residual_rms < 1e-8);
    for (size_t j = 0; j < 3; ++j) CHECK(std::fabs(fit.fitted[j] - fit.data[j]) < 1e-7);
}

TEST_CASE("fit family validation") {
    PotentialSpec W = gaussian_w();
    const std::vector<std::pair<unsigned, double>> two = {{1, 1.0}, {2, 0.5}};
    CHECK_THROWS_AS(mm_thooft_fit(W, two, 0), UsageError); // fewer than 3 points

    const std::vector<std::pair<unsigned, double>> drifting = {{1, 1.0}, {2, 0.75}, {3, 1.0 / 3.0}};
    CHECK_THROWS_AS(mm_thooft_fit(W, drifting, 1), UsageError); // lambda*N not fixed

    const std::vector<std::pair<unsigned, double>> negative = {{1, 1.0}, {2, 0.5}, {3, -1.0}};
    CHECK_THROWS_AS(mm_thooft_fit(W, negative, 1), UsageError);
}
