#pragma once

#include <mutex>
#include <vector>

#include "gvd/exact_scalar.hpp"
#include "gvd/rational.hpp"

namespace gvd {

// Bernoulli indexing conventions.
//   modern:        B_n with B_1 = -1/2, odd-index zero above 1.
//   classical_abs: |B_{2n}| for n >= 1, the table headed 1/6, 1/30, 1/42, ...
//                  (the indexing used by the genus expansion coefficients).
enum class BernoulliConvention { modern, classical_abs };

// Process-wide cache for Bernoulli numbers and integer zeta values.
// Growth happens under a lock; reads of already-computed entries go through
// the same lock (the vectors may reallocate while growing).
class ExactConstantsCache {
public:
    static ExactConstantsCache& instance();

    // Modern-convention B_n.
    Rational bernoulli(unsigned n);

    // zeta at an integer argument, as an exact pi-monomial:
    //   s even >= 2 : rational * pi^s
    //   s = 0       : -1/2
    //   s <= -1     : rational (zero at negative even s)
    // Throws DomainError at s = 1 (pole) and odd s >= 3 (no closed form here).
    ExactScalar zeta(long s);

private:
    ExactConstantsCache() = default;
    void grow_upto(unsigned n); // caller holds lock

    std::mutex lock_;
    std::vector<Rational> b_; // b_[n] = modern B_n
};

Rational bernoulli(unsigned n, BernoulliConvention conv = BernoulliConvention::modern);
ExactScalar zeta_int(long s);

// sigma_1(n): sum of positive divisors.  n >= 1.
Integer sigma1(unsigned long n);

// Faulhaber sum S_p(M) = sum_{s=1}^{M} s^p as a polynomial in M (degree p+1).
Poly faulhaber_poly(unsigned p);

// W_m(N) = sum_{s=1}^{N-1} (N - s) s^{2m} as a polynomial in N.
// For m >= 1 only even powers of N appear (checked in tests); W_0 = N(N-1)/2.
Poly weighted_power_sum(unsigned m);

// chi_g = (-1)^(g-1) |B_{2g}| / (2g (2g-2)), g >= 2: the constant-map
// Euler-characteristic weight at genus g.  Equal to zeta(1-2g)/(2-2g).
Rational chi_g(unsigned g);

// Constant term of the genus-g conifold free energy:
// (-1)^(g-1) 2 zeta(2g-2) chi_g / (2 pi)^(2g-2), g >= 2.  The pi powers cancel
// exactly; the result is rational (DomainError if it ever were not).
ExactScalar hodge_c3(unsigned g);

} // namespace gvd
