#include "gvd/torus.hpp"

namespace gvd {

namespace {

void check_point(const ModuliPoint& p) {
    if (!(p.t.im().sign() > 0) || !(p.tau.im().sign() > 0))
        throw DomainError("ModuliPoint: both moduli must have positive imaginary part");
}

// eta-product length that pushes the truncation error below the precision
// floor: |q|^terms = e^{-2 pi y terms} < 2^{-(prec+16)}.
unsigned eta_terms_for(mpfr_prec_t prec, double min_im) {
    double need = (static_cast<double>(prec) + 16.0) * 0.6931471805599453 /
                  (6.283185307179586 * min_im);
    unsigned t = static_cast<unsigned>(need) + 2;
    return t < 50 ? 50 : t;
}

BigFloat f1_one_modulus(const BigComplex& m, unsigned terms, mpfr_prec_t prec) {
    BigComplex eta = dedekind_eta(m, terms, prec);
    BigFloat y = m.im().at_precision(prec);
    // -log( sqrt(y) |eta|^2 ) = -(1/2) log y - log |eta|^2
    BigFloat half = BigFloat::from_rational(Rational(1, 2), prec);
    return -(half * log(y)) - log(norm2(eta));
}

} // namespace

BigFloat torus_f1(const ModuliPoint& p, unsigned terms, mpfr_prec_t prec) {
    check_point(p);
    if (terms < 1) throw DomainError("torus_f1: terms must be >= 1");
    return f1_one_modulus(p.t, terms, prec) + f1_one_modulus(p.tau, terms, prec);
}

TorusAnomalyCheck torus_anomaly_check(const ModuliPoint& p, const BigFloat& step,
                                      mpfr_prec_t prec) {
    check_point(p);
    if (!(step.sign() > 0)) throw NumericError("torus_anomaly_check: step must be positive");

    BigFloat h = step.at_precision(prec);
    // roundoff floor: the Laplacian divides ~prec-accurate values by h^2
    if (h * h < BigFloat::pow2(-(long)prec + 48, prec))
        throw NumericError("torus_anomaly_check: step " + h.str(8) +
                           " too small for precision " + std::to_string(prec) +
                           " (roundoff would dominate the stencil)");

    const char* tag = "d2/dt dtbar as full (Re,Im)-Laplacian; eta product auto-truncated";

    auto one_axis = [&](const BigComplex& m) {
        BigFloat quarter_im = m.im().at_precision(prec) /
                              BigFloat::from_long(4, prec);
        if (!(h < quarter_im))
            throw NumericError("torus_anomaly_check: step " + h.str(8) +
                               " too large for modulus with Im = " + m.im().str(8));
        double min_im = m.im().to_double() - h.to_double();
        unsigned terms = eta_terms_for(prec, min_im);
        BigComplex m_p = m.at_precision(prec);
        auto f1 = [&](const BigComplex& z) { return f1_one_modulus(z, terms, prec); };
        BigComplex ex(h, BigFloat(prec));
        BigComplex ey(BigFloat(prec), h);
        BigFloat lap = (f1(m_p + ex) + f1(m_p - ex) + f1(m_p + ey) + f1(m_p - ey) -
                        BigFloat::from_long(4, prec) * f1(m_p)) /
                       (h * h);
        BigFloat target = BigFloat::from_rational(Rational(1, 2), prec) /
                          (m_p.im() * m_p.im());
        return DualityReport::make_numeric(BigComplex(lap, BigFloat(prec)),
                                           BigComplex(target, BigFloat(prec)), tag);
    };

    TorusAnomalyCheck out;
    out.t_report = one_axis(p.t);
    out.tau_report = one_axis(p.tau);
    return out;
}

std::vector<Rational> torus_instanton_coeffs(unsigned nmax) {
    if (nmax < 1) throw DomainError("torus_instanton_coeffs: nmax must be >= 1");
    // log eta = (2 pi i t)/24 + log prod(1-q^n), so
    // (i/2pi) d/dt (-log eta) = 1/24 + q d/dq log prod(1-q^n),
    // and the q^n coefficient of the product-log term is n * L_n = -sigma_1(n).
    RationalSeries lp = euler_product_series(nmax).log();
    std::vector<Rational> out(nmax + 1);
    out[0] = Rational(1, 24);
    for (unsigned n = 1; n <= nmax; ++n) out[n] = Rational(n) * lp.coeff(n);
    return out;
}

Integer hnf_count(unsigned long n) {
    if (n == 0) throw DomainError("hnf_count: n must be positive");
    Integer count(0);
    for (unsigned long a = 1; a <= n; ++a) {
        if (n % a != 0) continue;
        unsigned long d = n / a;
        for (unsigned long b = 0; b < d; ++b) count += 1; // one HNF representative each
    }
    return count;
}

} // namespace gvd
