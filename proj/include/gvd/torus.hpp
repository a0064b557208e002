#pragma once

#include <vector>

#include "gvd/qfun.hpp"
#include "gvd/report.hpp"

namespace gvd {

// Kahler modulus t and complex-structure modulus tau, both in the upper
// half-plane (the torus is self-mirror, so the two enter symmetrically).
struct ModuliPoint {
    BigComplex t;
    BigComplex tau;
};

// Genus-1 amplitude
//   F1 = -log( sqrt(Im t) |eta(t)|^2 ) - log( sqrt(Im tau) |eta(tau)|^2 ),
// assembled from |eta| so the result is real by construction.  `terms`
// truncates the eta product.
BigFloat torus_f1(const ModuliPoint& p, unsigned terms, mpfr_prec_t prec = BigFloat::default_prec);

// Second-derivative check of F1 against the one-loop target:
//   Lap_t F1 = 1/(2 (Im t)^2)   and the tau analogue.
// The derivative here is the full (Re, Im) Laplacian d^2/dx^2 + d^2/dy^2,
// four times the Wirtinger d/dt d/dtbar, which is the normalization that
// makes the stated target hold (the |eta|^2 piece is harmonic and drops out).
// Five-point central stencils at the given step; the step is validated
// against the working precision (too coarse: leaves the upper half-plane;
// too fine: roundoff dominates).
struct TorusAnomalyCheck {
    DualityReport t_report;
    DualityReport tau_report;
};
TorusAnomalyCheck torus_anomaly_check(const ModuliPoint& p, const BigFloat& step,
                                      mpfr_prec_t prec = BigFloat::default_prec);

// q-expansion coefficients of (i/2pi) dF1/dt in the holomorphic limit
// (tbar -> infinity: the -(1/2) log Im t term is dropped and only the
// holomorphic log eta piece is differentiated):
//   index 0: 1/24,  index n >= 1: -sigma_1(n).
std::vector<Rational> torus_instanton_coeffs(unsigned nmax);

// Lattice-counting oracle: number of Hermite-normal-form matrices
// (a b; 0 d) with a d = n, 0 <= b < d.  Counts one representative per
// degree-n cover of the torus; equals sigma_1(n).
Integer hnf_count(unsigned long n);

} // namespace gvd
