#include "piverify/sun_series.hpp"

namespace piv {

using boost::multiprecision::abs;
using boost::multiprecision::sqrt;

ConvergenceInfo converges_absolutely(const SeriesPoint& pt) {
    if (pt.y.is_zero())
        throw std::invalid_argument("converges_absolutely: y must be nonzero");
    Complex x = to_complex(pt.x), y = to_complex(pt.y);
    Real axy = abs(x * y);
    if (axy == 0) return {true, Real(0)};
    Real r = abs(Complex(4) * x / y);
    Real root = sqrt(r) + sqrt(1 + r);
    Real ratio = 16 * axy * root * root;
    return {ratio < 1, ratio};
}

namespace {

// Tail model for outer sums whose terms carry an extra factor growing at most
// linearly in n: inflate the geometric ratio by a quarter of the gap to 1.
// For n past the inflated onset, (n+1)/n stays below the inflation factor for
// every ratio arising from a convergent point, so the model remains an upper
// bound on the decay.
GeometricTailModel weighted_model(const Real& ratio) {
    Real rm = ratio + (1 - ratio) / 4;
    return GeometricTailModel::from_ratio(rm);
}

// Inner sum over k for row n, exact: sum_{k=ceil(n/2)}^{n} C(n,k)^2 C(2k,n)
// (-1)^k y^{2k-n} with optional weight (2k-n) for the theta_y derivative.
GaussianRational inner_sum(long n, const GaussianRational& y, bool weight_y) {
    GaussianRational s;
    for (long k = (n + 1) / 2; k <= n; ++k) {
        Int c = binomial(n, k);
        Int coeff = c * c * binomial(2 * k, n);
        if (k & 1) coeff = -coeff;
        if (weight_y) coeff *= Int(2 * k - n);
        s += GaussianRational(coeff) * gr_pow(y, 2 * k - n);
    }
    return s;
}

BoundedValue double_series(const SeriesPoint& pt, long wa, long wb, bool weight_y,
                           const PrecisionContext& ctx) {
    auto conv = converges_absolutely(pt);
    if (!conv.convergent)
        throw std::domain_error("a_double: series does not converge absolutely");
    if (pt.x.is_zero()) {
        // only the n = 0 row survives; inner sum is 1, weight is wb
        Complex v = weight_y ? Complex(0) : Complex(Real(wb));
        return {v, Real(0)};
    }
    auto model = weighted_model(conv.ratio);
    GaussianRational xn(1);
    long cached_n = 0;
    auto term = [&](long n) {
        while (cached_n < n) {
            xn *= pt.x;
            ++cached_n;
        }
        GaussianRational t = GaussianRational(binomial(2 * n, n)) * xn *
                             inner_sum(n, pt.y, weight_y);
        if (!weight_y) t = GaussianRational(Int(wa * n + wb)) * t;
        return to_complex(t);
    };
    return sum_with_tail(term, model, ctx);
}

}  // namespace

BoundedValue a_double(const SeriesPoint& pt, const PrecisionContext& ctx) {
    return double_series(pt, 0, 1, false, ctx);
}

BoundedValue a_theta(const SeriesPoint& pt, EulerVar which, const PrecisionContext& ctx) {
    if (which == EulerVar::x) return double_series(pt, 1, 0, false, ctx);
    return double_series(pt, 0, 0, true, ctx);
}

BoundedValue a_legendre(const SeriesPoint& pt, const PrecisionContext& ctx) {
    auto conv = converges_absolutely(pt);
    if (!conv.convergent)
        throw std::domain_error("a_legendre: series does not converge absolutely");
    if (pt.x.is_zero()) return {Complex(1), Real(0)};
    auto model = weighted_model(conv.ratio);
    Complex z = sqrt(to_complex(GaussianRational(1) +
                                GaussianRational(Rational(4)) * pt.x / pt.y));
    Complex mxy = to_complex(GaussianRational(Rational(0)) -
                             pt.x * pt.y);   // -xy
    // incremental Legendre recurrence: keep P_{2k-1}, P_{2k}
    Complex pm1(1), p = z;     // P_0, P_1
    long deg = 1;
    Complex mxy_k(1);
    auto legendre_to = [&](long target) {
        while (deg < target) {
            Complex next = (Complex(Real(2 * deg + 1)) * z * p -
                            Complex(Real(deg)) * pm1) / Complex(Real(deg + 1));
            pm1 = p;
            p = next;
            ++deg;
        }
    };
    long cached_k = 0;
    auto term = [&](long k) {
        while (cached_k < k) {
            mxy_k *= mxy;
            ++cached_k;
        }
        if (k == 0) return Complex(1);
        legendre_to(2 * k);
        Int c = binomial(2 * k, k);
        Int c2 = c * c;   // materialize: converting an mpz expression template
                          // directly to Real miscomputes under this Boost version
        return Complex(Real(c2)) * mxy_k * p;
    };
    return sum_with_tail(term, model, ctx);
}

Int t_poly(long k, const Int& b, const Int& c) {
    if (k < 0) throw std::invalid_argument("t_poly: negative degree");
    // coefficient of z^k in (z^2 + b z + c)^k: choose i quadratic factors,
    // k - 2i linear factors and i constant factors
    Int s = 0;
    for (long i = 0; i * 2 <= k; ++i) {
        Int m = factorial(k) / (factorial(i) * factorial(i) * factorial(k - 2 * i));
        Int bp = 1, cp = 1;
        for (long j = 0; j < k - 2 * i; ++j) bp *= b;
        for (long j = 0; j < i; ++j) cp *= c;
        s += m * bp * cp;
    }
    return s;
}

BoundedValue eval_pi_series(const PiSeriesSpec& spec, const PrecisionContext& ctx) {
    if (spec.form == SeriesForm::double_series)
        return double_series(spec.pt, spec.a, spec.b, false, ctx);
    // t_form: ratio bound 16 |base| (1 + |tb| + |tc|)^2 dominates
    // C(2n,n)^2 T_{2n}(tb,tc) |base|^n since |T_m| <= (1 + |tb| + |tc|)^m.
    Complex base = to_complex(spec.base);
    Real ab = abs(base);
    Real growth = Real(1 + std::abs(spec.tb) + std::abs(spec.tc));
    Real ratio = 16 * ab * growth * growth;
    if (ratio >= 1)
        throw std::domain_error("eval_pi_series: T-form series does not converge");
    auto model = weighted_model(ratio);
    Int tb(spec.tb), tc(spec.tc);
    Complex base_n(1);
    long cached_n = 0;
    auto term = [&](long n) {
        while (cached_n < n) {
            base_n *= base;
            ++cached_n;
        }
        Int c = binomial(2 * n, n);
        Int w = Int(spec.a * n + spec.b) * c * c * t_poly(2 * n, tb, tc);
        return Complex(Real(w)) * base_n;
    };
    return sum_with_tail(term, model, ctx);
}

}  // namespace piv
