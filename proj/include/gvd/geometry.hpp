#pragma once

#include <functional>
#include <string>
#include <vector>

#include "gvd/bigcomplex.hpp"
#include "gvd/gw_table.hpp"
#include "gvd/report.hpp"
#include "gvd/series.hpp"

namespace gvd {

using PeriodMap = std::function<BigComplex(const std::vector<BigComplex>&)>;

// Weight-2 homogeneous prepotential over the h+1 periods X^I, as a black-box
// evaluator.  flat_form optionally supplies F(t) in the X^0 = 1 gauge
// (arguments are the h flat coordinates t^a = X^a / X^0); when absent it is
// derived from the evaluator at X = (1, t).
struct PrepotentialSpec {
    PeriodMap evaluator;
    PeriodMap flat_form;
};

// alpha-cycle periods X^I and beta-cycle periods F_I.  F_I may be left empty
// where an operation can reconstruct it as the gradient of a prepotential.
struct PeriodVector {
    std::vector<BigComplex> X;
    std::vector<BigComplex> F_I;
};

using Tensor3 = std::vector<std::vector<std::vector<BigComplex>>>;
using RationalTensor3 = std::vector<std::vector<std::vector<Rational>>>;

// Kahler potential, metric, and Yukawa data at one flat-coordinate point.
struct KahlerData {
    BigFloat K;
    bool sign_flipped = false; // bilinear e^{-K} came out negative and was
                               // re-oriented (overall Omega phase convention)
    std::vector<std::vector<BigComplex>> G; // Hermitian-symmetrized metric
    Tensor3 C;
    Tensor3 Cbar;
};

// Magnetic charges and electric potentials, X^I = p^I + i phi^I.
struct OSVCharges {
    std::vector<long> p;
    std::vector<BigFloat> phi;
};

// Default central-difference step 2^{-prec/(order+2)} for an order-th
// derivative: balances O(h^2) truncation against 2^{-prec}/h^order roundoff.
BigFloat fd_default_step(mpfr_prec_t prec, unsigned order);

// Numeric gradient of the evaluator at X (central differences plus one
// Richardson level, applied per component).
std::vector<BigComplex> prepotential_gradient(const PrepotentialSpec& F,
                                              const std::vector<BigComplex>& X, mpfr_prec_t prec);

// Euler identity sum_I X^I F_I = 2 F(X) for a weight-2 homogeneous F.
// Uses P.F_I when supplied, otherwise the numeric gradient.
DualityReport euler_check(const PrepotentialSpec& F, const PeriodVector& P, mpfr_prec_t prec);

// Third partials C_abc = d^3 F / dt^a dt^b dt^c of the flat-form prepotential
// by nested central differences (one Richardson level), symmetrized over all
// index orders.  step = 0 selects the order-3 default; an explicit step is
// validated against the roundoff floor.
Tensor3 yukawa_from_prepotential(const PrepotentialSpec& F, const std::vector<BigComplex>& t,
                                 mpfr_prec_t prec, const BigFloat* step = nullptr);

// e^{-K} through the symplectic bilinear i (sum Xbar^I F_I - sum X^I Fbar_I).
// A negative bilinear is re-oriented with sign_flipped recorded; an exact
// zero is a degenerate-point error.
struct KahlerNorm {
    BigFloat value;
    bool sign_flipped = false;
};
KahlerNorm kahler_from_periods(const PeriodVector& P);

// K = -log e^{-K} and G_ab = d_a dbar_b K by mixed central differences on the
// flat coordinates; Hermitian-symmetrized; C from yukawa_from_prepotential.
// DomainError when e^{-K} <= 0 after re-orientation (outside the cone).
KahlerData kahler_metric(const PrepotentialSpec& F, const std::vector<BigComplex>& t,
                         mpfr_prec_t prec);

// C_abc(q) = kappa_abc + sum_n n_a n_b n_c N_{0,n} q^n / (1 - q^n) with
// q^n = prod_a q_a^{n_a}.  Requires |q^n| < 1 for every tabulated n; a pole
// q^n = 1 is a DomainError.  The Rational overload is exact.
Tensor3 quantum_yukawa(const GWTable& T, const std::vector<BigComplex>& q);
RationalTensor3 quantum_yukawa(const GWTable& T, const std::vector<Rational>& q);

// Multicover/q-coefficient view: coefficient of q^d in the instanton part of
// C_abc, i.e. sum over n, m >= 1 with m n = d of n_a n_b n_c N_{0,n}.
Rational quantum_yukawa_qcoeff(const GWTable& T, unsigned a, unsigned b, unsigned c,
                               const std::vector<unsigned long>& d);

// q-expansion of the holomorphic-limit genus-1 coefficient per modulus
// direction a:
//   (-1)^chat/24 * c2_a  -  sum_n n_a N_{1,n} sum_m m q^{m|n|}/(1-q^{m|n|})
//                         -  (1/12) sum_n n_a N_{0,n} q^{|n|}/(1-q^{|n|}),
// expanded through q^qmax with every q_a set to the common variable q
// (|n| = sum_a n_a; for one modulus this is the plain expansion).
std::vector<RationalSeries> genus1_gw_series(const GWTable& T, unsigned qmax);

// |exp(-F(p + i phi))|^2, assembled in log space: exp(-2 Re F).
BigFloat osv_assemble(const PeriodMap& F_total, const OSVCharges& charges, mpfr_prec_t prec);

} // namespace gvd
