#pragma once

// The bridge between the double series A(x,y) and the hypergeometric world:
// the pair (X,Y) tied to (x,y) by the two algebraic relations
//
//   -xy       = ((X-Y) / (4(1+XY)))^2
//   1 + 4x/y  = ((X+Y)(1-XY) / ((X-Y)(1+XY)))^2
//
// the product formula A(x,y) = (1+XY)/2 * F(1-X^2) F(1-Y^2), the symmetry
// group of the relations, the derivative dA/dx in hypergeometric form, and a
// certification check for the analytic-continuation path that underwrites the
// product formula at a given pair.

#include "piverify/precision.hpp"
#include "piverify/special.hpp"
#include "piverify/sun_series.hpp"

#include <vector>

namespace piv {

enum class PairProvenance { solved, modular, manual };

struct XYPair {
    Complex X, Y;
    PairProvenance provenance = PairProvenance::manual;
};

struct RelationResidual {
    Real r1;   // residual of the -xy relation, cleared form
    Real r2;   // residual of the 1+4x/y relation, cleared form
};

// Residuals of the two relations in branch-free polynomial form:
//   r1 = |16xy(1+XY)^2 + (X-Y)^2|
//   r2 = |(y+4x)((X-Y)(1+XY))^2 - y((X+Y)(1-XY))^2| / |y|
RelationResidual relations_residual(const XYPair& pair, const SeriesPoint& pt,
                                    const PrecisionContext& ctx);

// All solutions of the relation system at (x,y): eliminate Y through a
// numeric resultant (Sylvester determinant sampled on a circle, inverse DFT),
// solve the univariate polynomial, back-substitute and Newton-polish each
// pair jointly.  Degenerate pairs (1+XY = 0) are discarded.
std::vector<XYPair> solve_xy(const SeriesPoint& pt, const PrecisionContext& ctx);

// Closure of {pair} under (-X,-Y), (1/X,1/Y), (Y,X), the twist
// ((1-X)/(1+X), (1-Y)/(1+Y)) and, when with_conjugation, (conj X, conj Y).
std::vector<XYPair> symmetry_orbit(const XYPair& pair, const PrecisionContext& ctx,
                                   bool with_conjugation = false);

// (1+XY)/2 * F(1-X^2) * F(1-Y^2).  Throws on a cut violation unless a side
// directive resolves it.
BoundedValue wz_product(const XYPair& pair, const PrecisionContext& ctx,
                        CutSide side = CutSide::none);

// dA/dx through the product formula: implicit differentiation of the two
// relations gives a 2x2 linear system for dX/dx and dY/dx.
BoundedValue d_a_dx_hyper(const XYPair& pair, const SeriesPoint& pt,
                          const PrecisionContext& ctx, CutSide side = CutSide::none);

struct PathCertificate {
    bool certified;
    Real max_ratio;           // worst convergence functional along the path
    Real min_cut_clearance;   // min distance of 1-X_t^2, 1-Y_t^2 from [1,inf)
};

// Certifies the convex path X_t = 1 + t(X-1), Y_t = 1 + t(Y-1), t in [0,1],
// on a 64-point grid: the induced (x_t, y_t) stay inside the convergence
// domain and the hypergeometric arguments keep clear of the branch cut.
PathCertificate certify_path(const XYPair& pair, const PrecisionContext& ctx);

}  // namespace piv
