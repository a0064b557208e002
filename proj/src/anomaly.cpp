#include "gvd/anomaly.hpp"

#include "gvd/errors.hpp"
#include "gvd/rational.hpp"

namespace gvd {

namespace {

mpfr_prec_t field_prec(const Field2D& f) {
    return f.v.empty() ? BigFloat::default_prec : f.v[0].precision();
}

void require_same_shape(const Field2D& a, const Field2D& b, const char* what) {
    if (!a.same_shape(b))
        throw UsageError(std::string("anomaly grid: shape mismatch between fields (") + what + ")");
}

// Holomorphic Wirtinger derivative (1/2)(d/dx - i d/dy) by central
// differences; boundary ring left at zero.
Field2D wirtinger_d(const Field2D& f) {
    const mpfr_prec_t prec = field_prec(f);
    Field2D out(f.nx, f.ny, f.x0, f.y0, f.h, prec);
    const BigFloat two_h = f.h + f.h;
    const BigComplex ihalf = BigComplex::i(prec);
    for (size_t iy = 1; iy + 1 < f.ny; ++iy)
        for (size_t ix = 1; ix + 1 < f.nx; ++ix) {
            BigComplex dx = (f.at(ix + 1, iy) - f.at(ix - 1, iy)) / BigComplex(two_h);
            BigComplex dy = (f.at(ix, iy + 1) - f.at(ix, iy - 1)) / BigComplex(two_h);
            out.at(ix, iy) = scale(dx - ihalf * dy, BigFloat::from_rational(Rational(1, 2), prec));
        }
    return out;
}

} // namespace

Field2D sample_field(size_t nx, size_t ny, const BigFloat& x0, const BigFloat& y0,
                     const BigFloat& h, mpfr_prec_t prec,
                     const std::function<BigComplex(const BigFloat&, const BigFloat&)>& f) {
    if (nx < 1 || ny < 1) throw UsageError("sample_field: empty grid");
    if (!(h > BigFloat(prec))) throw UsageError("sample_field: spacing must be positive");
    Field2D out(nx, ny, x0.at_precision(prec), y0.at_precision(prec), h.at_precision(prec), prec);
    for (size_t iy = 0; iy < ny; ++iy)
        for (size_t ix = 0; ix < nx; ++ix) out.at(ix, iy) = f(out.x(ix), out.y(iy));
    return out;
}

ResidualReport anomaly_residual_g1(const AnomalyGrid& data, const Field2D& F1, long chi) {
    require_same_shape(data.K, data.G, "K vs G");
    require_same_shape(data.K, data.C, "K vs C");
    require_same_shape(data.K, F1, "K vs F1");
    if (F1.nx < 5 || F1.ny < 5)
        throw NumericError("anomaly_residual_g1: grid too coarse, need at least 5 points per "
                           "axis for the interior stencil");

    const mpfr_prec_t prec = field_prec(F1);
    const BigFloat h2 = F1.h * F1.h;
    const BigFloat quarter = BigFloat::from_rational(Rational(1, 4), prec);
    const BigFloat half = BigFloat::from_rational(Rational(1, 2), prec);
    const BigFloat chi_weight =
        BigFloat::from_rational(rational_frac(chi, 24) - 1, prec); // chi/24 - 1

    ResidualReport rep;
    rep.residual = Field2D(F1.nx, F1.ny, F1.x0, F1.y0, F1.h, prec);
    rep.max_norm = BigFloat(prec);
    for (size_t iy = 1; iy + 1 < F1.ny; ++iy)
        for (size_t ix = 1; ix + 1 < F1.nx; ++ix) {
            BigComplex lap = F1.at(ix + 1, iy) + F1.at(ix - 1, iy) + F1.at(ix, iy + 1) +
                             F1.at(ix, iy - 1) - scale(F1.at(ix, iy), BigFloat::from_long(4, prec));
            BigComplex lhs = scale(lap, quarter / h2);

            BigFloat K = data.K.at(ix, iy).re();
            BigFloat G = data.G.at(ix, iy).re();
            BigFloat C2 = norm2(data.C.at(ix, iy));
            BigFloat rhs = half * C2 * exp(K + K) / (G * G) - chi_weight * G;

            BigComplex r = lhs - BigComplex(rhs);
            rep.residual.at(ix, iy) = r;
            BigFloat a = abs(r);
            if (a > rep.max_norm) rep.max_norm = a;
        }
    return rep;
}

Field2D anomaly_rhs_g(unsigned g, const std::map<unsigned, GenusFields>& lower,
                      const AnomalyGrid& data) {
    if (g < 2) throw UsageError("anomaly_rhs_g: genus must be >= 2");
    require_same_shape(data.K, data.G, "K vs G");
    require_same_shape(data.K, data.C, "K vs C");
    for (unsigned r = 1; r < g; ++r) {
        auto it = lower.find(r);
        if (it == lower.end())
            throw UsageError("anomaly_rhs_g: missing lower-genus data for r = " +
                             std::to_string(r));
        require_same_shape(data.K, it->second.DF, "K vs DF_r");
    }
    const GenusFields& top = lower.at(g - 1);
    if (top.DDF.v.empty())
        throw UsageError("anomaly_rhs_g: missing second covariant derivative for r = " +
                         std::to_string(g - 1));
    require_same_shape(data.K, top.DDF, "K vs DDF_{g-1}");

    const mpfr_prec_t prec = field_prec(data.K);
    const BigFloat half = BigFloat::from_rational(Rational(1, 2), prec);
    Field2D out(data.K.nx, data.K.ny, data.K.x0, data.K.y0, data.K.h, prec);
    for (size_t iy = 0; iy < out.ny; ++iy)
        for (size_t ix = 0; ix < out.nx; ++ix) {
            BigComplex acc = top.DDF.at(ix, iy);
            for (unsigned r = 1; r < g; ++r)
                acc += lower.at(r).DF.at(ix, iy) * lower.at(g - r).DF.at(ix, iy);
            BigFloat K = data.K.at(ix, iy).re();
            BigFloat G = data.G.at(ix, iy).re();
            BigComplex pref = scale(data.C.at(ix, iy).conj(), half * exp(K + K) / (G * G));
            out.at(ix, iy) = pref * acc;
        }
    return out;
}

Field2D covariant_d(const Field2D& f, const Field2D& K, int weight) {
    require_same_shape(f, K, "f vs K");
    const mpfr_prec_t prec = field_prec(f);
    Field2D df = wirtinger_d(f);
    Field2D dK = wirtinger_d(K);
    Field2D out(f.nx, f.ny, f.x0, f.y0, f.h, prec);
    for (size_t iy = 1; iy + 1 < f.ny; ++iy)
        for (size_t ix = 1; ix + 1 < f.nx; ++ix)
            out.at(ix, iy) =
                df.at(ix, iy) + scale(dK.at(ix, iy) * f.at(ix, iy),
                                      BigFloat::from_long(weight, prec));
    return out;
}

Field2D covariant_dd(const Field2D& f, const Field2D& K, const Field2D& G, int weight) {
    require_same_shape(f, K, "f vs K");
    require_same_shape(f, G, "f vs G");
    const mpfr_prec_t prec = field_prec(f);
    Field2D Df = covariant_d(f, K, weight);
    Field2D dDf = wirtinger_d(Df);
    Field2D dK = wirtinger_d(K);
    Field2D dG = wirtinger_d(G);
    Field2D out(f.nx, f.ny, f.x0, f.y0, f.h, prec);
    // the interior of Df is one ring in; its derivative is valid two rings in
    for (size_t iy = 2; iy + 2 < f.ny; ++iy)
        for (size_t ix = 2; ix + 2 < f.nx; ++ix) {
            BigComplex gamma = dG.at(ix, iy) / G.at(ix, iy); // Levi-Civita, one modulus
            out.at(ix, iy) = dDf.at(ix, iy) +
                             scale(dK.at(ix, iy) * Df.at(ix, iy),
                                   BigFloat::from_long(weight, prec)) -
                             gamma * Df.at(ix, iy);
        }
    return out;
}

ManufacturedCase manufactured_g1_case(size_t n, const BigFloat& step, mpfr_prec_t prec) {
    if (n < 5) throw UsageError("manufactured_g1_case: need at least a 5x5 grid");
    if (!(step.at_precision(prec).sign() > 0))
        throw UsageError("manufactured_g1_case: step must be positive");

    const BigFloat h = step.at_precision(prec);
    const BigFloat half_span = h * BigFloat::from_double(0.5 * static_cast<double>(n - 1), prec);
    const BigFloat one = BigFloat::from_long(1, prec);
    if (!(half_span < one))
        throw UsageError("manufactured_g1_case: grid leaves the upper half-plane (span too wide)");
    const BigFloat x0 = -half_span;
    const BigFloat y0 = one - half_span;

    const BigFloat eps = BigFloat::from_rational(rational_frac(1, 1000), prec);
    const BigFloat quarter = BigFloat::from_rational(rational_frac(1, 4), prec);
    const BigFloat three_q = BigFloat::from_rational(rational_frac(3, 4), prec);
    const BigFloat twelve = BigFloat::from_long(12, prec);
    const BigFloat nine_eighths = BigFloat::from_rational(rational_frac(9, 8), prec);

    ManufacturedCase mc;
    mc.chi = 48; // chi/24 - 1 = 1, so the metric term enters with unit weight
    mc.f1 = sample_field(n, n, x0, y0, h, prec, [&](const BigFloat& x, const BigFloat& y) {
        BigFloat r2 = x * x + y * y;
        BigFloat quart = x * x * x * x + y * y * y * y;
        return BigComplex(quarter * r2 + eps * quart);
    });
    mc.data.K = sample_field(n, n, x0, y0, h, prec, [&](const BigFloat&, const BigFloat& y) {
        return BigComplex(-(log(y) + log(y) + log(y)));
    });
    mc.data.G = sample_field(n, n, x0, y0, h, prec, [&](const BigFloat&, const BigFloat& y) {
        return BigComplex(three_q / (y * y));
    });
    // |C|^2 from the genus-1 equation with the analytic Laplacian of F1:
    //   (1/2)|C|^2 e^{2K} G^{-2} = Lap F1 / 4 + G,  e^{2K} G^{-2} = (16/9) y^{-2}
    mc.data.C = sample_field(n, n, x0, y0, h, prec, [&](const BigFloat& x, const BigFloat& y) {
        BigFloat lap = one + twelve * eps * (x * x + y * y);
        BigFloat rhs = quarter * lap + three_q / (y * y);
        return BigComplex(sqrt(nine_eighths * (y * y) * rhs));
    });
    return mc;
}

} // namespace gvd
