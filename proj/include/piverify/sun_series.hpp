#pragma once

// The central double series A(x,y), its Euler derivatives, the equivalent
// Legendre-polynomial single series, the absolute-convergence predicate and
// the trinomial-coefficient series form.
//
// Inner sums over k are evaluated in exact Gaussian-rational arithmetic so the
// alternating (-1)^k cancellation costs no precision; only the outer sum over
// n is floating point, with a geometric tail bound from the convergence
// predicate.

#include "piverify/precision.hpp"
#include "piverify/rational.hpp"

namespace piv {

struct SeriesPoint {
    GaussianRational x, y;
};

struct ConvergenceInfo {
    bool convergent;
    Real ratio;   // value of the convergence functional; < 1 means convergent
};

// ratio = 16|xy| (sqrt(|4x/y|) + sqrt(1 + |4x/y|))^2, convergent iff < 1.
ConvergenceInfo converges_absolutely(const SeriesPoint& pt);

enum class EulerVar { x, y };

// A(x,y) = sum_n x^n C(2n,n) sum_{k=ceil(n/2)}^{n} C(n,k)^2 C(2k,n) (-1)^k y^{2k-n}
BoundedValue a_double(const SeriesPoint& pt, const PrecisionContext& ctx);

// Euler derivative theta_x A (term weight n) or theta_y A (term weight 2k-n).
BoundedValue a_theta(const SeriesPoint& pt, EulerVar which, const PrecisionContext& ctx);

// A(x,y) = sum_k (-xy)^k C(2k,k)^2 P_{2k}(sqrt(1 + 4x/y)), principal root.
BoundedValue a_legendre(const SeriesPoint& pt, const PrecisionContext& ctx);

// Coefficient of z^k in (z^2 + b z + c)^k, exact.
Int t_poly(long k, const Int& b, const Int& c);

enum class SeriesForm { double_series, t_form };

struct PiSeriesSpec {
    long a = 0, b = 0;          // term weight a*n + b
    SeriesForm form = SeriesForm::double_series;
    SeriesPoint pt;             // double_series: the (x,y) point
    GaussianRational base;      // t_form: n-th power base
    long tb = 0, tc = 0;        // t_form: T_{2n}(tb, tc) parameters
    Rational target_over_pi;    // asserted value is target_over_pi / pi
};

// double_series: sum_n (a n + b) x^n C(2n,n) [inner sum]  (= b A + a theta_x A)
// t_form:       sum_n (a n + b) base^n C(2n,n)^2 T_{2n}(tb, tc)
BoundedValue eval_pi_series(const PiSeriesSpec& spec, const PrecisionContext& ctx);

}  // namespace piv
