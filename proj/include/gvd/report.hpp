#pragma once

#include <string>

#include "gvd/bigcomplex.hpp"
#include "gvd/exact_scalar.hpp"

namespace gvd {

// Outcome of one verification: either an exact comparison of ExactScalars
// (equality is a boolean, no tolerances) or a numeric comparison with
// absolute/relative deviations.  convention_tag records the q/phase
// convention in force so reports stay interpretable on their own.
struct DualityReport {
    enum class Kind { exact, numeric };

    Kind kind = Kind::numeric;
    std::string convention_tag;

    // exact variant
    ExactScalar lhs_exact, rhs_exact;
    bool equal = false;

    // numeric variant
    BigComplex lhs, rhs;
    BigFloat abs_dev, rel_dev;

    static DualityReport make_exact(const ExactScalar& l, const ExactScalar& r, std::string tag) {
        DualityReport rep;
        rep.kind = Kind::exact;
        rep.lhs_exact = l;
        rep.rhs_exact = r;
        rep.equal = (l == r);
        rep.convention_tag = std::move(tag);
        return rep;
    }

    // rel_dev = |lhs-rhs| / max(|lhs|, |rhs|); zero when both sides vanish.
    static DualityReport make_numeric(const BigComplex& l, const BigComplex& r, std::string tag) {
        DualityReport rep;
        rep.kind = Kind::numeric;
        rep.lhs = l;
        rep.rhs = r;
        rep.abs_dev = abs(l - r);
        BigFloat la = abs(l), ra = abs(r);
        BigFloat m = la < ra ? ra : la;
        rep.rel_dev = m.is_zero() ? BigFloat(m.precision()) : rep.abs_dev / m;
        rep.equal = rep.abs_dev.is_zero();
        rep.convention_tag = std::move(tag);
        return rep;
    }
};

} // namespace gvd
