#pragma once

#include <string>

#include "gvd/rational.hpp"

namespace gvd {

// Exact value of the form  c * pi^p * i^e  with c rational.
//
// Normal form: i^2 = -1 is folded into the sign of c, so e ends up in {0,1};
// c = 0 forces p = e = 0.  Values in this form close under multiplication and
// division.  Addition is defined only within one monomial class (same p, same
// e after normalization, or either side zero); anything else throws, because
// silently mixing pi-powers is exactly the bug class this type exists to stop.
class ExactScalar {
public:
    ExactScalar() : c_(0), pi_(0), i_(0) {}
    explicit ExactScalar(const Rational& c, long pi_power = 0, long i_power = 0)
        : c_(c), pi_(pi_power), i_(i_power) {
        normalize();
    }
    explicit ExactScalar(long n) : c_(n), pi_(0), i_(0) {}

    const Rational& coeff() const { return c_; }
    long pi_power() const { return pi_; }
    long i_power() const { return i_; }
    bool is_zero() const { return c_ == 0; }
    bool is_rational() const { return pi_ == 0 && i_ == 0; }

    // Rational value; throws unless the pi/i content is trivial.
    Rational to_rational() const {
        if (!is_rational() && !is_zero())
            throw DomainError("ExactScalar: " + str() + " is not rational");
        return c_;
    }

    ExactScalar operator-() const { return ExactScalar(-c_, pi_, i_); }

    friend ExactScalar operator+(const ExactScalar& a, const ExactScalar& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.pi_ != b.pi_ || a.i_ != b.i_)
            throw DomainError("ExactScalar: cannot add distinct monomials " + a.str() + " and " +
                              b.str());
        return ExactScalar(a.c_ + b.c_, a.pi_, a.i_);
    }
    friend ExactScalar operator-(const ExactScalar& a, const ExactScalar& b) { return a + (-b); }

    friend ExactScalar operator*(const ExactScalar& a, const ExactScalar& b) {
        if (a.is_zero() || b.is_zero()) return ExactScalar();
        return ExactScalar(a.c_ * b.c_, a.pi_ + b.pi_, a.i_ + b.i_);
    }
    friend ExactScalar operator/(const ExactScalar& a, const ExactScalar& b) {
        if (b.is_zero()) throw DomainError("ExactScalar: division by zero");
        if (a.is_zero()) return ExactScalar();
        // 1/i = -i, folded by passing the power difference through normalize().
        return ExactScalar(a.c_ / b.c_, a.pi_ - b.pi_, a.i_ - b.i_);
    }

    friend bool operator==(const ExactScalar& a, const ExactScalar& b) {
        return a.c_ == b.c_ && a.pi_ == b.pi_ && a.i_ == b.i_;
    }
    friend bool operator!=(const ExactScalar& a, const ExactScalar& b) { return !(a == b); }

    // Renderings like "-1/57600", "(1/6)*pi^2", "(1/120)*i", "(-3/4)*pi^2*i".
    std::string str() const {
        if (is_zero()) return "0";
        std::string s;
        bool wrap = (pi_ != 0 || i_ != 0);
        std::string cs = c_.get_str();
        if (wrap && (c_ != 1 && c_ != -1)) {
            s = "(" + cs + ")";
        } else if (wrap) {
            s = (c_ == -1) ? "-" : "";
        } else {
            s = cs;
        }
        if (pi_ != 0) {
            s += "pi";
            if (pi_ != 1) s += "^" + std::to_string(pi_);
        }
        if (i_ != 0) {
            if (pi_ != 0) s += "*";
            s += "i";
        }
        if (wrap && (c_ != 1 && c_ != -1)) {
            // reinsert the separator dropped above
            size_t close = s.find(')');
            s.insert(close + 1, "*");
        }
        return s;
    }

private:
    void normalize() {
        if (c_ == 0) {
            pi_ = 0;
            i_ = 0;
            return;
        }
        long r = i_ % 4;
        if (r < 0) r += 4;
        if (r >= 2) {
            c_ = -c_;
            r -= 2;
        }
        i_ = r;
    }

    Rational c_;
    long pi_;
    long i_;
};

} // namespace gvd
