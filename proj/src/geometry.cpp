#include "gvd/geometry.hpp"

#include "gvd/errors.hpp"

namespace gvd {

namespace {

BigComplex half_diff(const PeriodMap& f, std::vector<BigComplex> X, size_t axis,
                     const BigFloat& h) {
    const BigComplex step((BigFloat(h)));
    X[axis] += step;
    BigComplex plus = f(X);
    X[axis] -= step + step;
    BigComplex minus = f(X);
    return (plus - minus) / BigComplex(h + h);
}

// Central difference with one Richardson level: O(h^4) for smooth f.
BigComplex dir_derivative(const PeriodMap& f, const std::vector<BigComplex>& X, size_t axis,
                          const BigFloat& h) {
    BigComplex d1 = half_diff(f, X, axis, h);
    BigFloat two = BigFloat::from_long(2, h.precision());
    BigComplex d2 = half_diff(f, X, axis, h / two);
    return scale(scale(d2, two + two) - d1, BigFloat::from_rational(Rational(1, 3), h.precision()));
}

PeriodMap flat_of(const PrepotentialSpec& F) {
    if (F.flat_form) return F.flat_form;
    if (!F.evaluator) throw UsageError("prepotential: no evaluator attached");
    PeriodMap ev = F.evaluator;
    return [ev](const std::vector<BigComplex>& t) {
        std::vector<BigComplex> X;
        X.reserve(t.size() + 1);
        mpfr_prec_t prec = t.empty() ? BigFloat::default_prec : t[0].precision();
        X.push_back(BigComplex(BigFloat::from_long(1, prec)));
        for (const auto& ta : t) X.push_back(ta);
        return ev(X);
    };
}

// Real-direction second partials of a real-valued map on C^h, treating each
// modulus as the pair (x_a, y_a).  dir = 2a for x_a, 2a+1 for y_a.
class RealHessianProbe {
public:
    RealHessianProbe(std::function<BigFloat(const std::vector<BigComplex>&)> f,
                     std::vector<BigComplex> center, BigFloat h)
        : f_(std::move(f)), c_(std::move(center)), h_(std::move(h)) {
        f0_ = f_(c_);
    }

    BigFloat second(size_t d1, size_t d2) const {
        if (d1 == d2) {
            BigFloat fp = f_(shift(d1, 1)), fm = f_(shift(d1, -1));
            return (fp - (f0_ + f0_) + fm) / (h_ * h_);
        }
        BigFloat fpp = f_(shift(d1, 1, d2, 1)), fpm = f_(shift(d1, 1, d2, -1));
        BigFloat fmp = f_(shift(d1, -1, d2, 1)), fmm = f_(shift(d1, -1, d2, -1));
        BigFloat four = BigFloat::from_long(4, h_.precision());
        return (fpp - fpm - fmp + fmm) / (four * h_ * h_);
    }

private:
    std::vector<BigComplex> shift(size_t d1, int s1, size_t d2 = 0, int s2 = 0) const {
        std::vector<BigComplex> p = c_;
        apply(p, d1, s1);
        if (s2 != 0) apply(p, d2, s2);
        return p;
    }
    void apply(std::vector<BigComplex>& p, size_t dir, int s) const {
        BigFloat delta = s > 0 ? h_ : -h_;
        size_t a = dir / 2;
        if (dir % 2 == 0)
            p[a] = BigComplex(p[a].re() + delta, p[a].im());
        else
            p[a] = BigComplex(p[a].re(), p[a].im() + delta);
    }

    std::function<BigFloat(const std::vector<BigComplex>&)> f_;
    std::vector<BigComplex> c_;
    BigFloat h_;
    BigFloat f0_;
};

void check_leading_minors(const std::vector<std::vector<BigComplex>>& G) {
    // Gaussian elimination on a copy; Hermitian positive definite iff all
    // pivots stay positive.
    size_t n = G.size();
    std::vector<std::vector<BigComplex>> M = G;
    for (size_t k = 0; k < n; ++k) {
        if (!(M[k][k].re() > BigFloat(M[k][k].re().precision())))
            throw DomainError("kahler_metric: metric not positive definite at pivot " +
                              std::to_string(k));
        for (size_t r = k + 1; r < n; ++r) {
            BigComplex fct = M[r][k] / M[k][k];
            for (size_t c = k; c < n; ++c) M[r][c] -= fct * M[k][c];
        }
    }
}

} // namespace

BigFloat fd_default_step(mpfr_prec_t prec, unsigned order) {
    return BigFloat::pow2(-static_cast<long>(prec) / (static_cast<long>(order) + 2), prec);
}

std::vector<BigComplex> prepotential_gradient(const PrepotentialSpec& F,
                                              const std::vector<BigComplex>& X,
                                              mpfr_prec_t prec) {
    if (!F.evaluator) throw UsageError("prepotential_gradient: no evaluator attached");
    if (X.empty()) throw UsageError("prepotential_gradient: empty period vector");
    BigFloat h = fd_default_step(prec, 1);
    std::vector<BigComplex> grad;
    grad.reserve(X.size());
    std::vector<BigComplex> Xp;
    for (const auto& x : X) Xp.push_back(x.at_precision(prec));
    for (size_t i = 0; i < X.size(); ++i) grad.push_back(dir_derivative(F.evaluator, Xp, i, h));
    return grad;
}

DualityReport euler_check(const PrepotentialSpec& F, const PeriodVector& P, mpfr_prec_t prec) {
    if (!F.evaluator) throw UsageError("euler_check: no evaluator attached");
    if (P.X.empty()) throw UsageError("euler_check: empty period vector");
    bool degenerate = true;
    for (const auto& x : P.X)
        if (!x.is_zero()) degenerate = false;
    if (degenerate) throw UsageError("euler_check: degenerate period vector (all X = 0)");

    std::vector<BigComplex> X;
    for (const auto& x : P.X) X.push_back(x.at_precision(prec));
    std::vector<BigComplex> FI;
    if (!P.F_I.empty()) {
        if (P.F_I.size() != P.X.size())
            throw UsageError("euler_check: X and F_I length mismatch");
        for (const auto& f : P.F_I) FI.push_back(f.at_precision(prec));
    } else {
        FI = prepotential_gradient(F, X, prec);
    }

    BigComplex lhs(prec);
    for (size_t i = 0; i < X.size(); ++i) lhs += X[i] * FI[i];
    BigComplex rhs = scale(F.evaluator(X), BigFloat::from_long(2, prec));
    return DualityReport::make_numeric(
        lhs, rhs, P.F_I.empty() ? "F_I from central-difference gradient, one Richardson level"
                                : "F_I supplied");
}

Tensor3 yukawa_from_prepotential(const PrepotentialSpec& F, const std::vector<BigComplex>& t,
                                 mpfr_prec_t prec, const BigFloat* step) {
    if (t.empty()) throw UsageError("yukawa_from_prepotential: empty flat coordinate vector");
    PeriodMap flat = flat_of(F);
    BigFloat h = step ? step->at_precision(prec) : fd_default_step(prec, 3);
    if (step) {
        // Third differences divide by h^3: h below the roundoff floor (or an
        // absurdly large h) cannot produce meaningful digits.
        if (!(h > BigFloat::pow2(-(static_cast<long>(prec) - 16) / 3, prec)))
            throw NumericError("yukawa_from_prepotential: step " + h.str(3) +
                               " is below the roundoff floor for precision " +
                               std::to_string(prec));
        if (!(h < BigFloat::from_rational(Rational(1, 4), prec)))
            throw NumericError("yukawa_from_prepotential: step " + h.str(3) + " too large");
    }

    std::vector<BigComplex> tp;
    for (const auto& x : t) tp.push_back(x.at_precision(prec));
    const size_t n = tp.size();

    auto diff_along = [](PeriodMap f, size_t axis, BigFloat hh) -> PeriodMap {
        return [f = std::move(f), axis, hh](const std::vector<BigComplex>& x) {
            std::vector<BigComplex> xp = x, xm = x;
            BigComplex stepc((BigFloat(hh)));
            xp[axis] += stepc;
            xm[axis] -= stepc;
            return (f(xp) - f(xm)) / BigComplex(hh + hh);
        };
    };
    auto third = [&](size_t a, size_t b, size_t c, const BigFloat& hh) {
        return diff_along(diff_along(diff_along(flat, c, hh), b, hh), a, hh)(tp);
    };

    BigFloat two = BigFloat::from_long(2, prec);
    BigFloat third_f = BigFloat::from_rational(Rational(1, 3), prec);
    Tensor3 C(n, std::vector<std::vector<BigComplex>>(n, std::vector<BigComplex>(n, BigComplex(prec))));
    for (size_t a = 0; a < n; ++a)
        for (size_t b = a; b < n; ++b)
            for (size_t c = b; c < n; ++c) {
                BigComplex d1 = third(a, b, c, h);
                BigComplex d2 = third(a, b, c, h / two);
                BigComplex val = scale(scale(d2, two + two) - d1, third_f);
                // discrete shifts commute, so one evaluation serves all
                // permutations of (a, b, c)
                size_t idx[3] = {a, b, c};
                size_t perm[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                     {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
                for (auto& pidx : perm) C[idx[pidx[0]]][idx[pidx[1]]][idx[pidx[2]]] = val;
            }
    return C;
}

KahlerNorm kahler_from_periods(const PeriodVector& P) {
    if (P.X.empty() || P.X.size() != P.F_I.size())
        throw UsageError("kahler_from_periods: X and F_I must have equal positive length");
    mpfr_prec_t prec = P.X[0].precision();
    for (const auto& x : P.X)
        if (x.precision() < prec) prec = x.precision();
    for (const auto& f : P.F_I)
        if (f.precision() < prec) prec = f.precision();

    BigComplex s(prec);
    for (size_t i = 0; i < P.X.size(); ++i)
        s += P.X[i].conj() * P.F_I[i] - P.X[i] * P.F_I[i].conj();
    BigFloat v = (BigComplex::i(prec) * s).re();
    if (v.is_zero()) throw DomainError("kahler_from_periods: degenerate point, e^{-K} = 0");
    if (v.sign() < 0) return {-v, true};
    return {v, false};
}

KahlerData kahler_metric(const PrepotentialSpec& F, const std::vector<BigComplex>& t,
                         mpfr_prec_t prec) {
    if (t.empty()) throw UsageError("kahler_metric: empty flat coordinate vector");
    PeriodMap flat = flat_of(F);
    const size_t n = t.size();
    std::vector<BigComplex> tc;
    for (const auto& x : t) tc.push_back(x.at_precision(prec));

    // e^{-K} through the bilinear on periods reconstructed from the flat
    // form: X = (1, t), F_a = d_a F, F_0 = 2F - t.dF (weight-2 homogeneity).
    auto emk_raw = [&flat, n, prec](const std::vector<BigComplex>& pt) {
        PeriodVector P;
        P.X.push_back(BigComplex(BigFloat::from_long(1, prec)));
        for (const auto& x : pt) P.X.push_back(x);
        BigComplex Fval = flat(pt);
        BigFloat h = fd_default_step(prec, 1);
        std::vector<BigComplex> dF;
        for (size_t a = 0; a < n; ++a) dF.push_back(dir_derivative(flat, pt, a, h));
        BigComplex F0 = scale(Fval, BigFloat::from_long(2, prec));
        for (size_t a = 0; a < n; ++a) F0 -= pt[a] * dF[a];
        P.F_I.push_back(F0);
        for (size_t a = 0; a < n; ++a) P.F_I.push_back(dF[a]);
        BigComplex s(prec);
        for (size_t i = 0; i <= n; ++i)
            s += P.X[i].conj() * P.F_I[i] - P.X[i] * P.F_I[i].conj();
        return (BigComplex::i(prec) * s).re();
    };

    BigFloat center = emk_raw(tc);
    if (center.is_zero()) throw DomainError("kahler_metric: degenerate point, e^{-K} = 0");
    const bool flipped = center.sign() < 0;
    auto emk = [&emk_raw, flipped, prec](const std::vector<BigComplex>& pt) {
        BigFloat v = emk_raw(pt);
        if (flipped) v = -v;
        if (!(v > BigFloat(prec)))
            throw DomainError("kahler_metric: e^{-K} <= 0 after normalization, point outside "
                              "the positive-volume region");
        return -log(v);
    };

    KahlerData out;
    out.sign_flipped = flipped;
    out.K = emk(tc);

    // G_ab = d_a dbar_b K = (1/4)[(dxa dxb + dya dyb) + i (dxa dyb - dya dxb)] K
    BigFloat h2 = fd_default_step(prec, 2);
    RealHessianProbe probe(emk, tc, h2);
    std::vector<std::vector<BigFloat>> H(2 * n, std::vector<BigFloat>(2 * n, BigFloat(prec)));
    for (size_t d1 = 0; d1 < 2 * n; ++d1)
        for (size_t d2 = d1; d2 < 2 * n; ++d2) {
            H[d1][d2] = probe.second(d1, d2);
            H[d2][d1] = H[d1][d2];
        }
    BigFloat quarter = BigFloat::from_rational(Rational(1, 4), prec);
    out.G.assign(n, std::vector<BigComplex>(n, BigComplex(prec)));
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) {
            BigFloat re = (H[2 * a][2 * b] + H[2 * a + 1][2 * b + 1]) * quarter;
            BigFloat im = (H[2 * a][2 * b + 1] - H[2 * a + 1][2 * b]) * quarter;
            out.G[a][b] = BigComplex(re, im);
        }
    for (size_t a = 0; a < n; ++a)
        for (size_t b = a; b < n; ++b) {
            BigComplex sym = scale(out.G[a][b] + out.G[b][a].conj(),
                                   BigFloat::from_rational(Rational(1, 2), prec));
            out.G[a][b] = sym;
            out.G[b][a] = sym.conj();
        }
    check_leading_minors(out.G);

    out.C = yukawa_from_prepotential(F, tc, prec);
    out.Cbar.assign(n, std::vector<std::vector<BigComplex>>(
                           n, std::vector<BigComplex>(n, BigComplex(prec))));
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
            for (size_t c = 0; c < n; ++c) out.Cbar[a][b][c] = out.C[a][b][c].conj();
    return out;
}

Tensor3 quantum_yukawa(const GWTable& T, const std::vector<BigComplex>& q) {
    validate_gw_table(T);
    if (q.size() != T.h11)
        throw UsageError("quantum_yukawa: need one q per modulus (h11 = " +
                         std::to_string(T.h11) + ")");
    mpfr_prec_t prec = q[0].precision();
    for (const auto& x : q)
        if (x.precision() < prec) prec = x.precision();

    const size_t n = T.h11;
    Tensor3 C(n, std::vector<std::vector<BigComplex>>(n, std::vector<BigComplex>(n, BigComplex(prec))));
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
            for (size_t c = 0; c < n; ++c)
                C[a][b][c] = BigComplex(BigFloat::from_long(T.kappa[a][b][c], prec));

    const BigComplex one(BigFloat::from_long(1, prec));
    for (const auto& [deg, cnt] : T.N0) {
        if (cnt == 0) continue;
        BigComplex qn = one;
        for (size_t a = 0; a < n; ++a)
            if (deg[a] != 0) qn *= pow_si(q[a].at_precision(prec), static_cast<long>(deg[a]));
        if (!(abs(qn) < BigFloat::from_long(1, prec))) {
            if (qn == one)
                throw DomainError("quantum_yukawa: pole, q^n = 1 for a tabulated degree");
            throw DomainError("quantum_yukawa: |q^n| >= 1 for a tabulated degree; "
                              "instanton series diverges");
        }
        BigComplex fac = qn / (one - qn);
        for (size_t a = 0; a < n; ++a)
            for (size_t b = 0; b < n; ++b)
                for (size_t c = 0; c < n; ++c) {
                    long w = static_cast<long>(deg[a]) * static_cast<long>(deg[b]) *
                             static_cast<long>(deg[c]) * cnt;
                    if (w != 0) C[a][b][c] += scale(fac, BigFloat::from_long(w, prec));
                }
    }
    return C;
}

RationalTensor3 quantum_yukawa(const GWTable& T, const std::vector<Rational>& q) {
    validate_gw_table(T);
    if (q.size() != T.h11)
        throw UsageError("quantum_yukawa: need one q per modulus (h11 = " +
                         std::to_string(T.h11) + ")");
    const size_t n = T.h11;
    RationalTensor3 C(n, std::vector<std::vector<Rational>>(n, std::vector<Rational>(n, Rational(0))));
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
            for (size_t c = 0; c < n; ++c) C[a][b][c] = Rational(T.kappa[a][b][c]);

    for (const auto& [deg, cnt] : T.N0) {
        if (cnt == 0) continue;
        Rational qn(1);
        for (size_t a = 0; a < n; ++a)
            if (deg[a] != 0) qn *= pow_rat(q[a], static_cast<long>(deg[a]));
        if (qn == 1) throw DomainError("quantum_yukawa: pole, q^n = 1 for a tabulated degree");
        if (!(abs(qn) < 1))
            throw DomainError("quantum_yukawa: |q^n| >= 1 for a tabulated degree; "
                              "instanton series diverges");
        Rational fac = qn / (Rational(1) - qn);
        for (size_t a = 0; a < n; ++a)
            for (size_t b = 0; b < n; ++b)
                for (size_t c = 0; c < n; ++c) {
                    long w = static_cast<long>(deg[a]) * static_cast<long>(deg[b]) *
                             static_cast<long>(deg[c]) * cnt;
                    if (w != 0) C[a][b][c] += Rational(w) * fac;
                }
    }
    return C;
}

Rational quantum_yukawa_qcoeff(const GWTable& T, unsigned a, unsigned b, unsigned c,
                               const std::vector<unsigned long>& d) {
    validate_gw_table(T);
    if (a >= T.h11 || b >= T.h11 || c >= T.h11)
        throw UsageError("quantum_yukawa_qcoeff: modulus index out of range");
    if (d.size() != T.h11) throw UsageError("quantum_yukawa_qcoeff: degree vector length != h11");
    bool all_zero = true;
    for (unsigned long x : d)
        if (x != 0) all_zero = false;
    if (all_zero) throw UsageError("quantum_yukawa_qcoeff: zero degree vector");

    Rational acc(0);
    for (const auto& [deg, cnt] : T.N0) {
        if (cnt == 0) continue;
        // multicover: contributes iff d = m * deg for an integer m >= 1
        unsigned long m = 0;
        bool ok = true;
        for (size_t i = 0; i < deg.size() && ok; ++i) {
            if (deg[i] == 0) {
                if (d[i] != 0) ok = false;
            } else if (m == 0) {
                if (d[i] % deg[i] != 0) ok = false;
                else m = d[i] / deg[i];
            }
        }
        if (!ok || m == 0) continue;
        for (size_t i = 0; i < deg.size(); ++i)
            if (deg[i] * m != d[i]) ok = false;
        if (!ok) continue;
        acc += Rational(static_cast<long>(deg[a]) * static_cast<long>(deg[b]) *
                        static_cast<long>(deg[c]) * cnt);
    }
    return acc;
}

std::vector<RationalSeries> genus1_gw_series(const GWTable& T, unsigned qmax) {
    validate_gw_table(T);
    if (qmax < 1) throw UsageError("genus1_gw_series: qmax must be >= 1");

    std::vector<RationalSeries> out;
    for (unsigned a = 0; a < T.h11; ++a) {
        std::vector<Rational> coeffs(qmax + 1, Rational(0));
        coeffs[0] = rational_frac((T.chat % 2 == 0 ? 1 : -1) * T.c2[a], 24);
        for (const auto& [deg, cnt] : T.N1) {
            if (cnt == 0 || deg[a] == 0) continue;
            unsigned long s = 0;
            for (unsigned long x : deg) s += x;
            for (unsigned long m = 1; m * s <= qmax; ++m)
                for (unsigned long l = 1; m * l * s <= qmax; ++l)
                    coeffs[m * l * s] -= Rational(static_cast<long>(deg[a]) * cnt *
                                                  static_cast<long>(m));
        }
        for (const auto& [deg, cnt] : T.N0) {
            if (cnt == 0 || deg[a] == 0) continue;
            unsigned long s = 0;
            for (unsigned long x : deg) s += x;
            for (unsigned long l = 1; l * s <= qmax; ++l)
                coeffs[l * s] -= rational_frac(static_cast<long>(deg[a]) * cnt, 12);
        }
        out.emplace_back("q", qmax, coeffs);
    }
    return out;
}

BigFloat osv_assemble(const PeriodMap& F_total, const OSVCharges& charges, mpfr_prec_t prec) {
    if (!F_total) throw UsageError("osv_assemble: no total free energy attached");
    if (charges.p.empty() || charges.p.size() != charges.phi.size())
        throw UsageError("osv_assemble: p and phi must have equal positive length");
    std::vector<BigComplex> X;
    X.reserve(charges.p.size());
    for (size_t i = 0; i < charges.p.size(); ++i)
        X.emplace_back(BigFloat::from_long(charges.p[i], prec), charges.phi[i].at_precision(prec));
    BigComplex F = F_total(X);
    if (!F.is_finite()) throw NumericError("osv_assemble: total free energy diverges at X = p + i phi");
    BigFloat log_value = -(F.re() + F.re());
    if (abs(log_value) > BigFloat::from_double(1e15, prec))
        throw NumericError("osv_assemble: |exp(-F)|^2 out of exponent range, log value " +
                           log_value.str(6));
    return exp(log_value);
}

} // namespace gvd
