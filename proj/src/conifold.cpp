#include "gvd/conifold.hpp"

#include <thread>
#include <utility>

#include "gvd/errors.hpp"

namespace gvd {

namespace {

void validate_point(const CSPoint& p) {
    if (p.N < 1) throw UsageError("cs point: rank N must be >= 1");
    if (p.k < 1) throw UsageError("cs point: level k must be >= 1");
    if (p.precision_bits < MPFR_PREC_MIN)
        throw UsageError("cs point: precision_bits below the MPFR minimum");
}

// Phase of Z is pi * r with r = N(N-1)/8.  Reduce r mod 2 into (-1, 1]
// exactly: returns (r', m) with r = r' + 2m.
std::pair<Rational, Integer> reduced_phase(unsigned N) {
    Rational r = rational_frac(static_cast<long>(N) * (static_cast<long>(N) - 1), 8);
    Rational q = (r - 1) / 2;
    Integer m;
    mpz_cdiv_q(m.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return {r - 2 * Rational(m), m};
}

// log|Z|.  Grouped so the rank-1 case is exactly zero (empty sine product,
// and the (k+N) exponents cancel before any transcendental is evaluated).
BigFloat log_modulus(const CSPoint& p) {
    const mpfr_prec_t prec = p.precision_bits;
    const long kn = static_cast<long>(p.k) + static_cast<long>(p.N);
    const BigFloat pi = BigFloat::pi(prec);

    BigFloat acc = BigFloat::from_rational(rational_frac(1 - static_cast<long>(p.N), 2), prec) *
                   log(BigFloat::from_long(kn, prec));
    acc -= BigFloat::from_rational(rational_frac(1, 2), prec) *
           log(BigFloat::from_long(static_cast<long>(p.N), prec));
    const BigFloat two = BigFloat::from_long(2, prec);
    for (unsigned s = 1; s < p.N; ++s) {
        BigFloat angle = pi * BigFloat::from_rational(rational_frac(static_cast<long>(s), kn), prec);
        acc += BigFloat::from_long(static_cast<long>(p.N - s), prec) * log(two * sin(angle));
    }
    return acc;
}

// Solve the d x d system M c = b in place (Gaussian elimination, partial
// pivoting); b becomes the solution.  Returns the max/min pivot ratio as a
// cheap condition estimate.
BigFloat solve_linear(std::vector<std::vector<BigFloat>>& M, std::vector<BigFloat>& b) {
    const size_t d = M.size();
    BigFloat maxp, minp;
    for (size_t col = 0; col < d; ++col) {
        size_t piv = col;
        BigFloat best = abs(M[col][col]);
        for (size_t r = col + 1; r < d; ++r) {
            BigFloat a = abs(M[r][col]);
            if (a > best) {
                best = a;
                piv = r;
            }
        }
        if (best.is_zero()) throw NumericError("genus fit: singular normal equations");
        if (piv != col) {
            std::swap(M[piv], M[col]);
            std::swap(b[piv], b[col]);
        }
        if (col == 0) {
            maxp = best;
            minp = best;
        } else {
            if (best > maxp) maxp = best;
            if (best < minp) minp = best;
        }
        for (size_t r = col + 1; r < d; ++r) {
            BigFloat f = M[r][col] / M[col][col];
            if (f.is_zero()) continue;
            for (size_t cc = col; cc < d; ++cc) M[r][cc] -= f * M[col][cc];
            b[r] -= f * b[col];
        }
    }
    for (size_t r = d; r-- > 0;) {
        BigFloat acc = b[r];
        for (size_t cc = r + 1; cc < d; ++cc) acc -= M[r][cc] * b[cc];
        b[r] = acc / M[r][r];
    }
    return maxp / minp;
}

} // namespace

CouplingPair coupling(const CSPoint& p) {
    validate_point(p);
    const mpfr_prec_t prec = p.precision_bits;
    BigFloat lam = BigFloat::pi(prec) *
                   BigFloat::from_rational(
                       rational_frac(2, static_cast<long>(p.k) + static_cast<long>(p.N)), prec);
    CouplingPair cp;
    cp.lambda = BigComplex(lam);
    cp.t = BigComplex(BigFloat(prec), lam * BigFloat::from_long(static_cast<long>(p.N), prec));
    return cp;
}

BigComplex cs_partition(const CSPoint& p) {
    validate_point(p);
    const mpfr_prec_t prec = p.precision_bits;
    BigFloat mod = exp(log_modulus(p));
    auto [rp, m] = reduced_phase(p.N);
    (void)m;
    BigFloat arg = BigFloat::pi(prec) * BigFloat::from_rational(rp, prec);
    return BigComplex(mod * cos(arg), mod * sin(arg));
}

FreeEnergy cs_free_energy(const CSPoint& p) {
    validate_point(p);
    const mpfr_prec_t prec = p.precision_bits;
    auto [rp, m] = reduced_phase(p.N);
    // Im(-log Z) on the principal branch: -pi r' for r' in (-1, 1); the edge
    // r' = 1 puts 1/Z on the negative real axis, whose principal argument is
    // +pi, and shifts the recorded winding by one.
    Rational imr = -rp;
    Integer w = m;
    if (rp == 1) {
        imr = 1;
        w += 1;
    }
    FreeEnergy f;
    f.value = BigComplex(-log_modulus(p), BigFloat::pi(prec) * BigFloat::from_rational(imr, prec));
    f.winding = static_cast<long>(mpz_get_si(w.get_mpz_t()));
    return f;
}

Rational conifold_fg(unsigned g, const Rational& q) {
    if (g < 2) throw UsageError("conifold_fg: genus must be >= 2");
    Rational li = polylog_neg(2 * g - 3, q);
    return hodge_c3(g).to_rational() - chi_g(g) / Rational(factorial(2 * g - 3)) * li;
}

BigComplex conifold_fg(unsigned g, const BigComplex& q) {
    if (g < 2) throw UsageError("conifold_fg: genus must be >= 2");
    const mpfr_prec_t prec = q.precision();
    BigComplex li = polylog_neg(2 * g - 3, q);
    BigComplex c = to_bigcomplex(hodge_c3(g), prec);
    BigFloat w = BigFloat::from_rational(chi_g(g) / Rational(factorial(2 * g - 3)), prec);
    return c - scale(li, w);
}

DualityReport duality_instanton_identity(unsigned g, unsigned n) {
    if (g < 2) throw UsageError("duality_instanton_identity: genus must be >= 2");
    if (n < 1) throw UsageError("duality_instanton_identity: boundary power must be >= 1");

    ExactScalar lhs; // zero unless n is even: W_m has only even powers of N
    if (n % 2 == 0) {
        unsigned m = g - 1 + n / 2;
        Rational w = weighted_power_sum(m).coeff(n);
        Rational raw = zeta_int(2 * static_cast<long>(m)).coeff() * w /
                       (Rational(m) * pow_rat(Rational(4), static_cast<long>(m)));
        lhs = ExactScalar(raw, 0, 2 * static_cast<long>(g) - 2);
    }

    // zeta at negative even arguments vanishes, so odd n gives 0 = 0 here too.
    Rational rho = -chi_g(g) / Rational(factorial(2 * g - 3)) *
                   zeta_int(3 - 2 * static_cast<long>(g) - static_cast<long>(n)).coeff() /
                   Rational(factorial(n));
    ExactScalar rhs(rho, 0, static_cast<long>(n));

    return DualityReport::make_exact(
        lhs, rhs,
        "open side carries i^{2g-2} (ladder in nu = i*lambda); closed side carries i^n (t^n of "
        "Li_{3-2g}(e^{it}))");
}

GenusFitResult fit_genus_coefficients(const std::vector<CSPoint>& family, unsigned gmax,
                                      unsigned jobs) {
    const size_t J = family.size();
    const size_t d = static_cast<size_t>(gmax) + 2; // genus columns plus log(lambda)
    if (J < d)
        throw UsageError("genus fit: underdetermined, need at least gmax + 2 = " +
                         std::to_string(d) + " points, got " + std::to_string(J));
    mpfr_prec_t prec = family[0].precision_bits;
    for (const CSPoint& p : family) {
        validate_point(p);
        if (p.precision_bits < prec) prec = p.precision_bits;
    }

    std::vector<BigFloat> lam(J, BigFloat(prec)), y(J, BigFloat(prec));
    auto eval_range = [&](size_t lo, size_t hi) {
        for (size_t j = lo; j < hi; ++j) {
            lam[j] = coupling(family[j]).lambda.re().at_precision(prec);
            y[j] = cs_free_energy(family[j]).value.re().at_precision(prec);
        }
    };
    size_t nthreads = jobs < 2 ? 1 : (jobs < J ? jobs : J);
    if (nthreads <= 1) {
        eval_range(0, J);
    } else {
        std::vector<std::thread> pool;
        size_t chunk = (J + nthreads - 1) / nthreads;
        for (size_t t = 0; t < nthreads; ++t) {
            size_t lo = t * chunk, hi = lo + chunk < J ? lo + chunk : J;
            if (lo >= hi) break;
            pool.emplace_back(eval_range, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    // Design matrix: column g holds (i lambda)^{2g-2} folded to a real sign,
    // (-1)^{g-1} lambda^{2g-2}; the last column is log(lambda).
    std::vector<std::vector<BigFloat>> X(J, std::vector<BigFloat>(d, BigFloat(prec)));
    for (size_t j = 0; j < J; ++j) {
        for (unsigned g = 0; g <= gmax; ++g) {
            BigFloat col = pow_si(lam[j], 2 * static_cast<long>(g) - 2);
            X[j][g] = (g % 2 == 1) ? col : -col;
        }
        X[j][d - 1] = log(lam[j]);
    }

    std::vector<std::vector<BigFloat>> M(d, std::vector<BigFloat>(d, BigFloat(prec)));
    std::vector<BigFloat> b(d, BigFloat(prec));
    for (size_t r = 0; r < d; ++r) {
        for (size_t c = 0; c < d; ++c) {
            BigFloat acc(prec);
            for (size_t j = 0; j < J; ++j) acc += X[j][r] * X[j][c];
            M[r][c] = acc;
        }
        BigFloat acc(prec);
        for (size_t j = 0; j < J; ++j) acc += X[j][r] * y[j];
        b[r] = acc;
    }

    GenusFitResult res;
    res.condition = solve_linear(M, b);
    // Normal equations square the conditioning; past 2^{prec/2} the solution
    // digits are noise, so fail loudly with the estimate attached.
    if (res.condition > BigFloat::pow2(prec / 2, prec))
        throw NumericError("genus fit: ill-conditioned normal equations, pivot ratio ~ " +
                           res.condition.str(3) + " exceeds 2^(precision/2)");
    res.c.assign(b.begin(), b.begin() + gmax + 1);
    res.log_coeff = b[d - 1];

    BigFloat ss(prec);
    for (size_t j = 0; j < J; ++j) {
        BigFloat pred(prec);
        for (size_t cc = 0; cc < d; ++cc) pred += X[j][cc] * b[cc];
        BigFloat r = y[j] - pred;
        ss += r * r;
    }
    res.residual_rms = sqrt(ss / BigFloat::from_long(static_cast<long>(J), prec));
    res.convention_tag = "basis (i*lambda)^{2g-2} folded real, plus log(lambda) column";
    return res;
}

GenusFitResult duality_numeric_fit(const CSPoint& base, unsigned family_size, unsigned gmax,
                                   unsigned jobs) {
    validate_point(base);
    if (gmax < 2) throw UsageError("duality_numeric_fit: gmax must be >= 2");
    if (family_size < gmax + 2)
        throw UsageError("duality_numeric_fit: family_size must be at least gmax + 2 = " +
                         std::to_string(gmax + 2) + ", got " + std::to_string(family_size));

    std::vector<CSPoint> family;
    family.reserve(family_size);
    for (unsigned j = 1; j <= family_size; ++j) {
        CSPoint m;
        m.precision_bits = base.precision_bits;
        if (base.N == 1) {
            // Rank 1 cannot scale (N_j = j would change the theory content);
            // hold N = 1 and scale the level, so lambda still shrinks as 1/j
            // while Z = 1 identically.  The fit then verifies the zero ladder.
            m.N = 1;
            m.k = j * (base.k + 1) - 1;
        } else {
            m.N = j * base.N;
            m.k = j * base.k;
        }
        family.push_back(m);
    }

    GenusFitResult res = fit_genus_coefficients(family, gmax, jobs);
    if (base.N == 1) {
        res.convention_tag =
            "rank-1 family: Z = 1 identically, fit verifies all genus coefficients vanish";
        return res;
    }

    const mpfr_prec_t prec = base.precision_bits;
    // 't Hooft parameter T = lambda_0 N_0 is fixed along the family; the
    // closed-string side is evaluated at q = e^{iT} (that is, q = e^{it} with
    // t = i lambda N), where the (i lambda)-ladder converges to conifold_fg
    // with the constant-map sector included.
    BigFloat T =
        BigFloat::pi(prec) *
        BigFloat::from_rational(rational_frac(2L * static_cast<long>(base.N),
                                              static_cast<long>(base.k) + static_cast<long>(base.N)),
                                prec);
    BigComplex q(cos(T), sin(T));
    const std::string tag =
        "q = e^{it}, t = i*lambda*N; genus ladder in nu = i*lambda; log(lambda) column absorbs "
        "the measure sector";
    for (unsigned g = 2; g <= gmax; ++g)
        res.reports.push_back(
            DualityReport::make_numeric(BigComplex(res.c[g]), conifold_fg(g, q), tag));
    res.convention_tag = tag;
    return res;
}

GeneratingPack::GeneratingPack(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (labels_.empty()) throw UsageError("generating pack: at least one boundary label required");
}

void GeneratingPack::add(const std::vector<long>& degrees, const ExactScalar& coeff) {
    if (degrees.size() != labels_.size())
        throw UsageError("generating pack: degree vector length " + std::to_string(degrees.size()) +
                         " != number of labels " + std::to_string(labels_.size()));
    for (long dg : degrees)
        if (dg < 0) throw UsageError("generating pack: negative boundary count");
    auto it = terms_.find(degrees);
    if (it == terms_.end()) {
        if (!coeff.is_zero()) terms_.emplace(degrees, coeff);
        return;
    }
    ExactScalar s = it->second + coeff; // DomainError if monomial classes differ
    if (s.is_zero())
        terms_.erase(it);
    else
        it->second = s;
}

TruncatedSeries<ExactScalar> GeneratingPack::to_series(unsigned order) const {
    if (labels_.size() != 1)
        throw UsageError("generating pack: series collapse requires exactly one boundary label");
    std::vector<ExactScalar> coeffs(static_cast<size_t>(order) + 1);
    for (const auto& [deg, c] : terms_)
        if (static_cast<unsigned long>(deg[0]) <= order) coeffs[static_cast<size_t>(deg[0])] = c;
    return TruncatedSeries<ExactScalar>(labels_[0], order, coeffs);
}

} // namespace gvd
