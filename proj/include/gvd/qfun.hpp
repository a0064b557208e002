#pragma once

#include <vector>

#include "gvd/bigcomplex.hpp"
#include "gvd/exact.hpp"
#include "gvd/series.hpp"

namespace gvd {

// Euler product prod_{n=1}^{terms} (1 - q^n) as an exact q-series truncated
// at the same order.  Building block for eta and the instanton coefficients.
RationalSeries euler_product_series(unsigned terms);

// Dedekind eta: q^{1/24} prod_{n=1}^{terms} (1 - q^n), q = e^{2 pi i tau}.
// The q^{1/24} branch is the principal branch of e^{2 pi i tau / 24} (eta
// lives on the upper half-plane, not on a q-plane with a root cut).
// Truncation error is bounded by |q|^{terms+1} (1 + o(1)).
// DomainError unless Im(tau) > 0 and terms >= 1.
BigComplex dedekind_eta(const BigComplex& tau, unsigned terms,
                        mpfr_prec_t prec = BigFloat::default_prec);

// Li_{-m}(q) for odd m >= 1 in closed rational form P_m(q)/(1-q)^{m+1},
// generated by repeated q d/dq from q/(1-q).  Exact for rational q (any
// q != 1).  The numeric overload evaluates the same closed form; the series
// interpretation requires |q| < 1, but the closed form continues to any
// q != 1 and the unit circle |q| = 1 is explicitly allowed (the duality fit
// evaluates there); |q| > 1 is rejected to keep the instanton-sum reading.
Rational polylog_neg(unsigned m, const Rational& q);
BigComplex polylog_neg(unsigned m, const BigComplex& q);

// Numerator polynomial P_m with Li_{-m}(q) = P_m(q)/(1-q)^{m+1}.
Poly polylog_neg_numerator(unsigned m);

// Expansion of Li_{3-2g}(e^mu) about mu = 0 for g >= 2:
//   gamma_factor * mu^{polar_power} + sum_{j>=0} taylor[j] mu^j
// with gamma_factor = (2g-3)!, polar_power = 2-2g, taylor[j] = zeta(3-2g-j)/j!.
// The polar term is kept tagged and separate: the duality identity compares
// nonnegative powers only, and the polar piece belongs to the constant-map
// sector.
struct MuExpansion {
    ExactScalar gamma_factor;
    long polar_power;
    std::vector<ExactScalar> taylor; // index j = power of mu, 0..jmax
};
MuExpansion polylog_neg_mu_coeffs(unsigned g, unsigned jmax);

} // namespace gvd
