#pragma once

#include <string>
#include <vector>

#include "gvd/bigcomplex.hpp"
#include "gvd/exact_scalar.hpp"
#include "gvd/rational.hpp"

namespace gvd {

// Coefficient-ring glue.  A series never conjures constants out of thin air;
// it derives them from an existing coefficient so BigComplex precision
// propagates correctly.
inline Rational series_zero_like(const Rational&) { return Rational(0); }
inline Rational series_one_like(const Rational&) { return Rational(1); }
inline Rational series_div_uint(const Rational& x, unsigned long n) { return x / Rational(n); }
inline bool series_is_zero(const Rational& x) { return x == 0; }
inline bool series_is_one(const Rational& x) { return x == 1; }
inline std::string series_coeff_str(const Rational& x) { return x.get_str(); }

inline BigComplex series_zero_like(const BigComplex& z) { return BigComplex(z.precision()); }
inline BigComplex series_one_like(const BigComplex& z) {
    return BigComplex(BigFloat::from_long(1, z.precision()), BigFloat(z.precision()));
}
inline BigComplex series_div_uint(const BigComplex& z, unsigned long n) {
    return BigComplex(z.re() / BigFloat::from_long(long(n), z.precision()),
                      z.im() / BigFloat::from_long(long(n), z.precision()));
}
inline bool series_is_zero(const BigComplex& z) { return z.is_zero(); }
inline bool series_is_one(const BigComplex& z) {
    return z.im().is_zero() && z.re() == BigFloat::from_long(1, z.re().precision());
}
inline std::string series_coeff_str(const BigComplex& z) { return z.str(); }

inline ExactScalar series_zero_like(const ExactScalar&) { return ExactScalar(); }
inline ExactScalar series_one_like(const ExactScalar&) { return ExactScalar(1); }
inline ExactScalar series_div_uint(const ExactScalar& x, unsigned long n) {
    return x / ExactScalar(long(n));
}
inline bool series_is_zero(const ExactScalar& x) { return x.is_zero(); }
inline bool series_is_one(const ExactScalar& x) { return x == ExactScalar(1); }
inline std::string series_coeff_str(const ExactScalar& x) { return x.str(); }

// Power series truncated at a tracked order: coefficients c_0..c_order on
// var^0..var^order.  Binary operations require matching variable labels and
// truncate to the smaller order; domain preconditions (unit constant term for
// log, vanishing constant term for exp/compose, invertible constant term for
// invert) throw DomainError naming the offending coefficient.
template <class T>
class TruncatedSeries {
public:
    TruncatedSeries(std::string var, unsigned order, std::vector<T> coeffs)
        : var_(std::move(var)), order_(order), c_(std::move(coeffs)) {
        if (c_.empty()) throw DomainError("TruncatedSeries: need at least one coefficient");
        c_.resize(order_ + 1, series_zero_like(c_[0]));
    }

    static TruncatedSeries zero(const std::string& var, unsigned order, const T& like) {
        return TruncatedSeries(var, order, std::vector<T>{series_zero_like(like)});
    }

    const std::string& var() const { return var_; }
    unsigned order() const { return order_; }
    const T& coeff(unsigned k) const {
        if (k > order_) throw DomainError("TruncatedSeries: coefficient index " +
                                          std::to_string(k) + " beyond order " +
                                          std::to_string(order_));
        return c_[k];
    }
    const std::vector<T>& coeffs() const { return c_; }

    TruncatedSeries truncate(unsigned new_order) const {
        std::vector<T> c(c_.begin(), c_.begin() + std::min<size_t>(new_order + 1, c_.size()));
        return TruncatedSeries(var_, new_order, std::move(c));
    }

    TruncatedSeries operator-() const {
        std::vector<T> c = c_;
        for (auto& x : c) x = series_zero_like(x) - x;
        return TruncatedSeries(var_, order_, std::move(c));
    }

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
        a.check_var(b);
        unsigned n = std::min(a.order_, b.order_);
        std::vector<T> c;
        c.reserve(n + 1);
        for (unsigned k = 0; k <= n; ++k) c.push_back(a.c_[k] + b.c_[k]);
        return TruncatedSeries(a.var_, n, std::move(c));
    }
    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
        return a + (-b);
    }
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
        a.check_var(b);
        unsigned n = std::min(a.order_, b.order_);
        std::vector<T> c(n + 1, series_zero_like(a.c_[0]));
        for (unsigned i = 0; i <= n; ++i) {
            if (series_is_zero(a.c_[i])) continue;
            for (unsigned j = 0; i + j <= n; ++j) c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
        }
        return TruncatedSeries(a.var_, n, std::move(c));
    }

    TruncatedSeries scalar_mul(const T& s) const {
        std::vector<T> c = c_;
        for (auto& x : c) x = x * s;
        return TruncatedSeries(var_, order_, std::move(c));
    }

    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
        if (a.var_ != b.var_ || a.order_ != b.order_) return false;
        for (unsigned k = 0; k <= a.order_; ++k)
            if (!series_is_zero(a.c_[k] - b.c_[k])) return false;
        return true;
    }

    TruncatedSeries derivative() const {
        if (order_ == 0) return zero(var_, 0, c_[0]);
        std::vector<T> c;
        c.reserve(order_);
        for (unsigned k = 1; k <= order_; ++k) c.push_back(c_[k] * mk_int(k));
        return TruncatedSeries(var_, order_ - 1, std::move(c));
    }

    TruncatedSeries integrate(const T& c0) const {
        std::vector<T> c;
        c.reserve(order_ + 2);
        c.push_back(c0);
        for (unsigned k = 0; k <= order_; ++k) c.push_back(series_div_uint(c_[k], k + 1));
        return TruncatedSeries(var_, order_ + 1, std::move(c));
    }

    // f(g): requires g's constant term to vanish.
    TruncatedSeries compose(const TruncatedSeries& g) const {
        if (!series_is_zero(g.c_[0]))
            throw DomainError("series compose: inner constant term is " +
                              series_coeff_str(g.c_[0]) + ", need 0");
        unsigned n = std::min(order_, g.order_);
        TruncatedSeries r = zero(g.var_, n, c_[0]);
        TruncatedSeries gi = g.truncate(n);
        for (unsigned k = order_ + 1; k-- > 0;) {
            r = r * gi;
            r.c_[0] = r.c_[0] + c_[k];
        }
        return r;
    }

    // 1/f: requires invertible constant term.
    TruncatedSeries invert() const {
        if (series_is_zero(c_[0]))
            throw DomainError("series invert: constant term is 0");
        std::vector<T> inv(order_ + 1, series_zero_like(c_[0]));
        T one = series_one_like(c_[0]);
        inv[0] = one / c_[0];
        for (unsigned k = 1; k <= order_; ++k) {
            T acc = series_zero_like(c_[0]);
            for (unsigned j = 1; j <= k; ++j) acc = acc + c_[j] * inv[k - j];
            inv[k] = series_zero_like(acc) - acc / c_[0];
        }
        return TruncatedSeries(var_, order_, std::move(inv));
    }

    // log f: requires constant term exactly 1 (no scalar log in the ring).
    TruncatedSeries log() const {
        if (!series_is_one(c_[0]))
            throw DomainError("series log: constant term is " + series_coeff_str(c_[0]) +
                              ", need 1");
        if (order_ == 0) return zero(var_, 0, c_[0]);
        TruncatedSeries d = derivative();
        TruncatedSeries q = d * invert().truncate(order_ - 1);
        return q.integrate(series_zero_like(c_[0]));
    }

    // exp f: requires vanishing constant term.  e' = f' e termwise.
    TruncatedSeries exp() const {
        if (!series_is_zero(c_[0]))
            throw DomainError("series exp: constant term is " + series_coeff_str(c_[0]) +
                              ", need 0");
        std::vector<T> e(order_ + 1, series_zero_like(c_[0]));
        e[0] = series_one_like(c_[0]);
        for (unsigned k = 0; k < order_; ++k) {
            T acc = series_zero_like(c_[0]);
            for (unsigned j = 0; j <= k; ++j) acc = acc + c_[j + 1] * mk_int(j + 1) * e[k - j];
            e[k + 1] = series_div_uint(acc, k + 1);
        }
        return TruncatedSeries(var_, order_, std::move(e));
    }

private:
    void check_var(const TruncatedSeries& o) const {
        if (var_ != o.var_)
            throw DomainError("TruncatedSeries: variable mismatch '" + var_ + "' vs '" + o.var_ +
                              "'");
    }
    T mk_int(unsigned long n) const {
        T one = series_one_like(c_[0]);
        T acc = series_zero_like(c_[0]);
        for (unsigned long j = 0; j < n; ++j) acc = acc + one;
        return acc;
    }

    std::string var_;
    unsigned order_;
    std::vector<T> c_;
};

using RationalSeries = TruncatedSeries<Rational>;
using ComplexSeries = TruncatedSeries<BigComplex>;

} // namespace gvd
