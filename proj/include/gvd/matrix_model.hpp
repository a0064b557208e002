#pragma once

#include <utility>
#include <vector>

#include "gvd/bigfloat.hpp"

namespace gvd {

// Real polynomial potential W(x) = sum_k coeffs[k] x^k.
// Validation: degree >= 2 and positive leading coefficient.
struct PotentialSpec {
    std::vector<double> coeffs;

    unsigned degree() const;
    double eval(double x) const;
};
void validate_potential(const PotentialSpec& W);

// Gaussian closed form 2^{N/2} (pi lambda)^{N^2/2}.
BigFloat mm_gaussian_exact(unsigned N, const BigFloat& lambda);

// Eigenvalue integral c_N * int prod dx_i Delta(x)^2 exp(-sum W(x_i)/lambda)
// with the angular constant c_N = pi^{N(N-1)/2} / prod_{j<=N} j! calibrated
// on the Gaussian closed form.  Deterministic Gauss-Legendre tensor
// quadrature, adaptive in the rule order; N <= 4.
// Non-confining W (odd degree: weight blows up on one side) is a divergence
// diagnostic.
double mm_eigen_z(const PotentialSpec& W, unsigned N, double lambda, double rel_tol = 1e-11);

// Least-squares fit of y_j = -log Z(N_j, lambda_j) against the genus basis
// lambda^{2g-2}, g = 0..gmax, over an explicit family with t = lambda N
// fixed.  Returns basis coefficients, the per-point fitted values, and the
// RMS residual.  Underdetermined input (fewer than max(3, gmax+1) points,
// or drifting t) is an error.
struct ThooftFit {
    std::vector<double> c;
    std::vector<double> fitted; // model value at each family point
    std::vector<double> data;   // -log Z at each family point
    double residual_rms = 0;
};
ThooftFit mm_thooft_fit(const PotentialSpec& W, const std::vector<std::pair<unsigned, double>>& family,
                        unsigned gmax, double rel_tol = 1e-11);

} // namespace gvd
