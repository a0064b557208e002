#include "gvd/matrix_model.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <string>

#include "gvd/errors.hpp"

namespace gvd {

namespace {

struct Rule {
    std::vector<double> x, w;
};

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
const Rule& legendre_rule(unsigned n) {
    static std::map<unsigned, Rule> cache;
    static std::mutex lock;
    std::lock_guard<std::mutex> guard(lock);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    Rule r;
    r.x.assign(n, 0.0);
    r.w.assign(n, 0.0);
    for (unsigned i = 0; i < (n + 1) / 2; ++i) {
        double xi = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int iter = 0; iter < 64; ++iter) {
            double p0 = 1.0, p1 = xi;
            for (unsigned k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * xi * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (xi * p1 - p0) / (xi * xi - 1.0);
            double dx = p1 / dp;
            xi -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        r.x[i] = -xi;
        r.x[n - 1 - i] = xi;
        r.w[i] = r.w[n - 1 - i] = 2.0 / ((1.0 - xi * xi) * dp * dp);
    }
    return cache.emplace(n, std::move(r)).first->second;
}

double angular_constant(unsigned N) {
    // pi^{N(N-1)/2} / prod_{j=1}^{N} j!, calibrated on the Gaussian
    double fact_prod = 1.0, f = 1.0;
    for (unsigned j = 1; j <= N; ++j) {
        f *= j;
        fact_prod *= f;
    }
    return std::pow(M_PI, 0.5 * N * (N - 1)) / fact_prod;
}

// Half-width R with e^{-W(+-R)/lambda} negligible against the Vandermonde
// growth; deterministic doubling search.
double integration_halfwidth(const PotentialSpec& W, unsigned N, double lambda) {
    double R = 1.0;
    for (int iter = 0; iter < 400; ++iter) {
        double need = 40.0 + 2.0 * N * std::log1p(R);
        if (W.eval(R) / lambda >= need && W.eval(-R) / lambda >= need) return R;
        R *= 1.25;
    }
    throw NumericError("mm_eigen_z: could not bracket the integrand decay; potential too flat");
}

double tensor_quadrature(const PotentialSpec& W, unsigned N, double lambda, unsigned order) {
    const Rule& rule = legendre_rule(order);
    const double R = integration_halfwidth(W, N, lambda);

    std::vector<double> nodes(order), weights(order);
    for (unsigned i = 0; i < order; ++i) {
        nodes[i] = R * rule.x[i];
        weights[i] = R * rule.w[i] * std::exp(-W.eval(R * rule.x[i]) / lambda);
    }

    // odometer over the N-fold tensor grid, fixed lexicographic order
    std::vector<unsigned> idx(N, 0);
    std::vector<double> x(N);
    double acc = 0.0;
    while (true) {
        double f = 1.0;
        for (unsigned d = 0; d < N; ++d) {
            x[d] = nodes[idx[d]];
            f *= weights[idx[d]];
        }
        double vdm = 1.0;
        for (unsigned a = 0; a + 1 < N; ++a)
            for (unsigned b = a + 1; b < N; ++b) {
                double diff = x[a] - x[b];
                vdm *= diff * diff;
            }
        acc += f * vdm;

        unsigned d = 0;
        while (d < N && ++idx[d] == order) {
            idx[d] = 0;
            ++d;
        }
        if (d == N) break;
    }
    return angular_constant(N) * acc;
}

} // namespace

unsigned PotentialSpec::degree() const {
    size_t d = coeffs.size();
    while (d > 0 && coeffs[d - 1] == 0.0) --d;
    return d == 0 ? 0 : static_cast<unsigned>(d - 1);
}

double PotentialSpec::eval(double x) const {
    double acc = 0.0;
    for (size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
    return acc;
}

void validate_potential(const PotentialSpec& W) {
    unsigned d = W.degree();
    if (d < 2) throw UsageError("potential: degree must be >= 2");
    if (!(W.coeffs[d] > 0.0)) throw UsageError("potential: leading coefficient must be positive");
}

BigFloat mm_gaussian_exact(unsigned N, const BigFloat& lambda) {
    if (N < 1) throw UsageError("mm_gaussian_exact: N must be >= 1");
    if (!(lambda > BigFloat(lambda.precision())))
        throw UsageError("mm_gaussian_exact: lambda must be positive");
    const mpfr_prec_t prec = lambda.precision();
    BigFloat two = BigFloat::from_long(2, prec);
    BigFloat base = BigFloat::pi(prec) * lambda;
    // 2^{N/2} (pi lambda)^{N^2/2} as sqrt powers, exact for integer N
    return pow_si(sqrt(two), static_cast<long>(N)) *
           pow_si(sqrt(base), static_cast<long>(N) * static_cast<long>(N));
}

double mm_eigen_z(const PotentialSpec& W, unsigned N, double lambda, double rel_tol) {
    validate_potential(W);
    if (N < 1 || N > 4)
        throw UsageError("mm_eigen_z: N must be between 1 and 4 (deterministic quadrature budget)");
    if (!(lambda > 0)) throw UsageError("mm_eigen_z: lambda must be positive");
    if (W.degree() % 2 != 0)
        throw NumericError("mm_eigen_z: odd-degree potential is non-confining, the eigenvalue "
                           "integral diverges");

    static const std::vector<std::vector<unsigned>> orders = {
        {64, 96, 128}, {48, 64, 96, 128}, {48, 64, 96, 128}, {48, 64, 96}};
    const std::vector<unsigned>& seq = orders[N - 1];

    double prev = 0.0;
    bool have_prev = false;
    for (unsigned order : seq) {
        double z = tensor_quadrature(W, N, lambda, order);
        if (have_prev && std::fabs(z - prev) <= rel_tol * std::fabs(z)) return z;
        prev = z;
        have_prev = true;
    }
    char tol_s[32];
    std::snprintf(tol_s, sizeof tol_s, "%.3g", rel_tol);
    throw NumericError(std::string("mm_eigen_z: quadrature did not converge to relative "
                                   "tolerance ") + tol_s);
}

ThooftFit mm_thooft_fit(const PotentialSpec& W,
                        const std::vector<std::pair<unsigned, double>>& family, unsigned gmax,
                        double rel_tol) {
    validate_potential(W);
    const size_t J = family.size();
    const size_t d = static_cast<size_t>(gmax) + 1;
    if (J < 3 || J < d)
        throw UsageError("mm_thooft_fit: underdetermined family, need at least max(3, gmax+1) = " +
                         std::to_string(d < 3 ? 3 : d) + " points, got " + std::to_string(J));
    const double t0 = family[0].first * family[0].second;
    for (const auto& [N, lam] : family) {
        if (!(lam > 0)) throw UsageError("mm_thooft_fit: lambda must be positive");
        if (std::fabs(N * lam - t0) > 1e-9 * std::max(1.0, std::fabs(t0)))
            throw UsageError("mm_thooft_fit: family must hold lambda*N fixed (found " +
                             std::to_string(N * lam) + " vs " + std::to_string(t0) + ")");
    }

    ThooftFit fit;
    fit.data.reserve(J);
    for (const auto& [N, lam] : family) fit.data.push_back(-std::log(mm_eigen_z(W, N, lam, rel_tol)));

    std::vector<std::vector<double>> X(J, std::vector<double>(d));
    for (size_t j = 0; j < J; ++j)
        for (unsigned g = 0; g <= gmax; ++g)
            X[j][g] = std::pow(family[j].second, 2.0 * g - 2.0);

    std::vector<std::vector<double>> M(d, std::vector<double>(d, 0.0));
    std::vector<double> b(d, 0.0);
    for (size_t r = 0; r < d; ++r) {
        for (size_t c = 0; c < d; ++c)
            for (size_t j = 0; j < J; ++j) M[r][c] += X[j][r] * X[j][c];
        for (size_t j = 0; j < J; ++j) b[r] += X[j][r] * fit.data[j];
    }
    for (size_t col = 0; col < d; ++col) {
        size_t piv = col;
        for (size_t r = col + 1; r < d; ++r)
            if (std::fabs(M[r][col]) > std::fabs(M[piv][col])) piv = r;
        if (M[piv][col] == 0.0) throw NumericError("mm_thooft_fit: singular normal equations");
        std::swap(M[piv], M[col]);
        std::swap(b[piv], b[col]);
        for (size_t r = col + 1; r < d; ++r) {
            double f = M[r][col] / M[col][col];
            for (size_t c = col; c < d; ++c) M[r][c] -= f * M[col][c];
            b[r] -= f * b[col];
        }
    }
    for (size_t r = d; r-- > 0;) {
        double acc = b[r];
        for (size_t c = r + 1; c < d; ++c) acc -= M[r][c] * b[c];
        b[r] = acc / M[r][r];
    }
    fit.c = b;

    double ss = 0.0;
    fit.fitted.resize(J);
    for (size_t j = 0; j < J; ++j) {
        double pred = 0.0;
        for (size_t c = 0; c < d; ++c) pred += X[j][c] * b[c];
        fit.fitted[j] = pred;
        double r = fit.data[j] - pred;
        ss += r * r;
    }
    fit.residual_rms = std::sqrt(ss / J);
    return fit;
}

} // namespace gvd
