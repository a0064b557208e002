#pragma once

#include <functional>
#include <map>
#include <vector>

#include "gvd/bigcomplex.hpp"

namespace gvd {

// Scalar field sampled on a uniform grid over one modulus t = x + i y,
// row-major: at(ix, iy) = v[iy * nx + ix].
struct Field2D {
    size_t nx = 0, ny = 0;
    BigFloat x0, y0, h; // lower-left corner, common spacing
    std::vector<BigComplex> v;

    Field2D() = default;
    Field2D(size_t nx_, size_t ny_, BigFloat x0_, BigFloat y0_, BigFloat h_, mpfr_prec_t prec)
        : nx(nx_), ny(ny_), x0(std::move(x0_)), y0(std::move(y0_)), h(std::move(h_)),
          v(nx_ * ny_, BigComplex(prec)) {}

    const BigComplex& at(size_t ix, size_t iy) const { return v[iy * nx + ix]; }
    BigComplex& at(size_t ix, size_t iy) { return v[iy * nx + ix]; }
    BigFloat x(size_t ix) const { return x0 + BigFloat::from_long(static_cast<long>(ix), h.precision()) * h; }
    BigFloat y(size_t iy) const { return y0 + BigFloat::from_long(static_cast<long>(iy), h.precision()) * h; }
    bool same_shape(const Field2D& o) const {
        return nx == o.nx && ny == o.ny && x0 == o.x0 && y0 == o.y0 && h == o.h;
    }
};

Field2D sample_field(size_t nx, size_t ny, const BigFloat& x0, const BigFloat& y0,
                     const BigFloat& h, mpfr_prec_t prec,
                     const std::function<BigComplex(const BigFloat&, const BigFloat&)>& f);

// One-modulus Kahler data over the grid: K real, G real positive, C the
// Yukawa scalar (Cbar is its conjugate).
struct AnomalyGrid {
    Field2D K, G, C;
};

struct ResidualReport {
    Field2D residual; // interior points; boundary entries stay zero
    BigFloat max_norm;
};

// Genus-1 equation residual, pointwise on interior grid points:
//   d dbar F1  -  [ (1/2) |C|^2 e^{2K} G^{-2}  -  (chi/24 - 1) G ],
// with d dbar F1 = (1/4)(Laplacian F1) by the 5-point stencil.
// Grids must share shape; fewer than 5 points per axis is "too coarse".
ResidualReport anomaly_residual_g1(const AnomalyGrid& data, const Field2D& F1, long chi);

// Lower-genus inputs for the recursion step: the genus-r term, its first
// covariant derivative, and (for r = g-1) the second.
struct GenusFields {
    Field2D F, DF, DDF;
};

// Pointwise right-hand side of the genus-g recursion:
//   (1/2) Cbar e^{2K} G^{-2} ( DD F_{g-1} + sum_{r=1}^{g-1} DF_r DF_{g-r} ).
// Missing lower-genus data raises an error naming the genus r it needs.
Field2D anomaly_rhs_g(unsigned g, const std::map<unsigned, GenusFields>& lower,
                      const AnomalyGrid& data);

// One-modulus covariant derivative helpers on grids (central differences,
// interior points; boundary entries stay zero).  A weight-w section picks up
// w (dK); the second derivative adds the Levi-Civita term -(G^{-1} dG):
//   D f  = d f + w (d K) f
//   DD f = d (D f) + w (d K)(D f) - (G^{-1} d G)(D f)
// where d = (1/2)(d/dx - i d/dy) is the holomorphic Wirtinger derivative.
Field2D covariant_d(const Field2D& f, const Field2D& K, int weight);
Field2D covariant_dd(const Field2D& f, const Field2D& K, const Field2D& G, int weight);

// Manufactured one-modulus verification case on an n x n grid centered at
// t = i: F1 = (x^2 + y^2)/4 + eps (x^4 + y^4) with eps = 1/1000,
// K = -3 log y, G = 3/(4 y^2), chi = 48, and |C|^2 solved pointwise from the
// genus-1 equation so the analytic residual vanishes identically.  The
// reported residual of anomaly_residual_g1 on this case is then pure stencil
// truncation from the quartic term, O(step^2).
struct ManufacturedCase {
    AnomalyGrid data;
    Field2D f1;
    long chi = 48;
};
ManufacturedCase manufactured_g1_case(size_t n, const BigFloat& step, mpfr_prec_t prec);

} // namespace gvd
