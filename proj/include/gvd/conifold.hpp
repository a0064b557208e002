#pragma once

#include <map>
#include <vector>

#include "gvd/exact.hpp"
#include "gvd/qfun.hpp"
#include "gvd/report.hpp"
#include "gvd/series.hpp"

namespace gvd {

// U(N) Chern-Simons data on the three-sphere.
struct CSPoint {
    unsigned N = 1;
    unsigned k = 1;
    mpfr_prec_t precision_bits = BigFloat::default_prec;
};

// String coupling and 't Hooft coupling derived from a CSPoint:
// lambda = 2 pi / (k + N), t = i lambda N.
struct CouplingPair {
    BigComplex lambda;
    BigComplex t;
};
CouplingPair coupling(const CSPoint& p);

// Z(S^3) = e^{i pi N(N-1)/8} (k+N)^{-N/2} sqrt((k+N)/N)
//          prod_{s=1}^{N-1} [2 sin(s pi/(k+N))]^{N-s},
// evaluated term-exactly at p.precision_bits.
BigComplex cs_partition(const CSPoint& p);

// -log Z on the principal branch (Im in (-pi, pi]).  The phase of Z is the
// exact rational multiple pi N(N-1)/8, so the branch reduction happens in
// rational arithmetic and `winding` records the dropped 2 pi count exactly.
struct FreeEnergy {
    BigComplex value;
    long winding = 0;
};
FreeEnergy cs_free_energy(const CSPoint& p);

// Genus-g resolved-conifold free energy
//   F_g(q) = hodge_c3(g) - chi_g/(2g-3)! * Li_{3-2g}(q),
// exact for rational q (q != 1), closed-form numeric otherwise.
Rational conifold_fg(unsigned g, const Rational& q);
BigComplex conifold_fg(unsigned g, const BigComplex& q);

// Exact coefficient-level duality check at genus g, boundary power n.
//
// Open side: -log Z contains  sum_m W_m(N) zeta(2m)/(m (2 pi)^{2m}) lambda^{2m}
// from the sine products.  Substituting N = t/(i lambda) and organizing the
// genus ladder in powers of nu = i lambda (the natural variable of the
// expansion e^{-sum F_{g,n} nu^{2g-2} t^n}), the (g, n) coefficient is
//   [N^n] W_m(N) * zeta(2m)/(m 4^m pi^{2m})  carried with phase i^{2g-2},
// where m = g - 1 + n/2 (no term when n is odd).
// Closed side: the t^n coefficient of -chi_g/(2g-3)! Li_{3-2g}(e^{it}),
//   -chi_g/(2g-3)! * zeta(3-2g-n)/n!  carried with phase i^n.
// Both sides normalize to pure rationals (i^2 = -1 folded) and are compared
// exactly.  Log-bearing and polar terms are excluded: they live in the
// constant-map/Barnes sector, which the numeric fit covers instead.
DualityReport duality_instanton_identity(unsigned g, unsigned n);

// Least-squares extraction of genus coefficients from a family of points.
//
// Data: y_j = Re(-log Z_j) = -log|Z_j|.  Basis: the folded genus ladder
// (i lambda_j)^{2g-2} for g = 0..gmax plus a log(lambda_j) column (the
// constant-map/measure sector contributes an exact -(1/12) log lambda that a
// pure power basis cannot absorb; its coefficient is reported, not compared).
struct GenusFitResult {
    std::vector<BigFloat> c;   // c[g], coefficient on the (i lambda)^{2g-2} column
    BigFloat log_coeff;        // coefficient on log(lambda)
    BigFloat residual_rms;
    BigFloat condition;        // pivot-ratio estimate from the normal equations
    std::vector<DualityReport> reports; // per g = 2..gmax (duality_numeric_fit only)
    std::string convention_tag;
};
GenusFitResult fit_genus_coefficients(const std::vector<CSPoint>& family, unsigned gmax,
                                      unsigned jobs = 1);

// Scaling family from a base point: member j has N_j = j N0 and
// k_j + N_j = j (k0 + N0), so t = i lambda N is fixed while lambda_j =
// lambda_0 / j.  Fitted c_g is compared against conifold_fg(g, q) at
// q = e^{i T}, T = lambda_0 N0 (the 't Hooft parameter; q = e^{it} with
// t = iT maps the comparison onto the unit circle where the genus ladder
// in (i lambda) converges to the closed-string side, constant maps included).
// For N0 = 1 the rank is held fixed instead (Z = 1 identically) and the fit
// verifies that every coefficient vanishes; no closed-string comparison.
// Preconditions: family_size >= gmax + 2, gmax >= 2.
GenusFitResult duality_numeric_fit(const CSPoint& base, unsigned family_size, unsigned gmax,
                                   unsigned jobs = 1);

// Multivariate monomial accumulator for boundary generating functions
// F_{g; n_1..n_k} t_1^{n_1} ... t_k^{n_k}; collapses to a TruncatedSeries
// when there is a single boundary label.
class GeneratingPack {
public:
    explicit GeneratingPack(std::vector<std::string> labels);

    void add(const std::vector<long>& degrees, const ExactScalar& coeff);
    const std::map<std::vector<long>, ExactScalar>& terms() const { return terms_; }
    const std::vector<std::string>& labels() const { return labels_; }

    TruncatedSeries<ExactScalar> to_series(unsigned order) const;

private:
    std::vector<std::string> labels_;
    std::map<std::vector<long>, ExactScalar> terms_;
};

} // namespace gvd
