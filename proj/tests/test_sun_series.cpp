#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "piverify/special.hpp"
#include "piverify/sun_series.hpp"

using namespace piv;
using boost::multiprecision::abs;
using boost::multiprecision::pow;

static Real tenpow(long e) { return pow(Real(10), e); }

static SeriesPoint headline_pt() {
    return {GaussianRational(Rational(1, 480)), GaussianRational(Rational(8))};
}

static SeriesPoint imag_pt() {   // (i/240, 6i)
    return {GaussianRational(Rational(0), Rational(1, 240)),
            GaussianRational(Rational(0), Rational(6))};
}

// Independent brute-force partial sum with no shared code path: direct triple
// loop in exact rational arithmetic over the full k-range 0..n (terms with
// 2k < n vanish through the C(2k,n) factor, which this oracle does not know).
static GaussianRational naive_partial(const SeriesPoint& pt, long rows) {
    GaussianRational s;
    for (long n = 0; n < rows; ++n) {
        GaussianRational inner;
        for (long k = 0; k <= n; ++k) {
            Int c = binomial(n, k) * binomial(n, k) * binomial(2 * k, n);
            GaussianRational t = GaussianRational(c) * gr_pow(pt.y, 2 * k - n);
            inner += (k & 1) ? GaussianRational(Rational(0)) - t : t;
        }
        s += gr_pow(pt.x, n) * GaussianRational(binomial(2 * n, n)) * inner;
    }
    return s;
}

TEST_CASE("convergence predicate") {
    PrecisionGuard g(80);
    auto c = converges_absolutely(headline_pt());
    CHECK(c.convergent);
    // exactly 64/225 here: the |4x/y| correction collapses since 961 = 31^2
    CHECK(abs(c.ratio - Real(64) / 225) < tenpow(-70));

    SeriesPoint zero{GaussianRational(Rational(0)), GaussianRational(Rational(3))};
    auto cz = converges_absolutely(zero);
    CHECK(cz.convergent);
    CHECK(cz.ratio == 0);

    SeriesPoint bad{GaussianRational(Rational(1)), GaussianRational(Rational(1))};
    CHECK(!converges_absolutely(bad).convergent);

    // rotating both arguments onto the imaginary axis preserves the predicate
    auto ci = converges_absolutely(imag_pt());
    SeriesPoint rotated{GaussianRational(Rational(1, 240)), GaussianRational(Rational(6))};
    auto cr = converges_absolutely(rotated);
    CHECK(ci.convergent == cr.convergent);
    CHECK(abs(ci.ratio - cr.ratio) < tenpow(-70));

    SeriesPoint noy{GaussianRational(Rational(1)), GaussianRational(Rational(0))};
    CHECK_THROWS_AS(converges_absolutely(noy), std::invalid_argument);
}

TEST_CASE("a_double basics and brute-force cross-check") {
    PrecisionGuard g(120);
    auto ctx = ctx_new(120);
    SeriesPoint x0{GaussianRational(Rational(0)), GaussianRational(Rational(5))};
    auto v0 = a_double(x0, ctx);
    CHECK(v0.approx == Complex(1));
    CHECK(v0.err == 0);

    // frozen reference from an independent exact-rational script
    auto v = a_double(headline_pt(), ctx);
    Real ref("0.9417257885120286860753661051275278042468366490487956087");
    CHECK(abs(v.approx - Complex(ref)) < tenpow(-54));
    CHECK(v.err < ctx.target_tolerance);

    // in-test independent partial sum (30 rows; remainder ~ 0.285^30)
    Complex partial = to_complex(naive_partial(headline_pt(), 30));
    CHECK(abs(v.approx - partial) < tenpow(-12));
    Complex partial_i = to_complex(naive_partial(imag_pt(), 30));
    CHECK(abs(a_double(imag_pt(), ctx).approx - partial_i) < tenpow(-10));

    SeriesPoint bad{GaussianRational(Rational(1)), GaussianRational(Rational(1))};
    CHECK_THROWS_AS(a_double(bad, ctx), std::domain_error);
}

TEST_CASE("a_double equals a_legendre") {
    PrecisionGuard g(120);
    auto ctx = ctx_new(120);
    for (auto pt : {headline_pt(), imag_pt(),
                    SeriesPoint{GaussianRational(Rational(-1, 300)),
                                GaussianRational(Rational(7, 2))},
                    SeriesPoint{GaussianRational(Rational(1, 1000), Rational(1, 900)),
                                GaussianRational(Rational(5), Rational(1, 3))}}) {
        auto d = a_double(pt, ctx);
        auto l = a_legendre(pt, ctx);
        CHECK(bounded_eq(d, l, tenpow(-40)) == Verdict::verified);
    }
    SeriesPoint x0{GaussianRational(Rational(0)), GaussianRational(Rational(5))};
    CHECK(a_legendre(x0, ctx).approx == Complex(1));
}

TEST_CASE("a_theta: Euler derivatives") {
    PrecisionGuard g(120);
    auto ctx = ctx_new(120);
    SeriesPoint x0{GaussianRational(Rational(0)), GaussianRational(Rational(5))};
    CHECK(a_theta(x0, EulerVar::x, ctx).approx == Complex(0));

    auto pt = headline_pt();
    auto A = a_double(pt, ctx);
    auto tx = a_theta(pt, EulerVar::x, ctx);
    auto ty = a_theta(pt, EulerVar::y, ctx);

    // 233 A + 1054 theta_x A = 520/pi
    auto lhs = bv_add(bv_scale(Complex(233), A), bv_scale(Complex(1054), tx));
    BoundedValue target{Complex(Real(520) / real_pi()), Real(0)};
    CHECK(bounded_eq(lhs, target, tenpow(-40)) == Verdict::verified);

    // 2 A - 28 theta_x A + 65 theta_y A = 0
    auto comb = bv_add(bv_sub(bv_scale(Complex(2), A), bv_scale(Complex(28), tx)),
                       bv_scale(Complex(65), ty));
    CHECK(abs(comb.approx) + comb.err < tenpow(-40));

    // theta_x A against an exact-rational central difference in x
    Rational h(1, Int("10000000000000000000000000"));   // 10^-25
    SeriesPoint up{pt.x * GaussianRational(Rational(1) + h), pt.y};
    SeriesPoint dn{pt.x * GaussianRational(Rational(1) - h), pt.y};
    Complex fd = (a_double(up, ctx).approx - a_double(dn, ctx).approx) /
                 Complex(2 * to_real(h));
    CHECK(abs(tx.approx - fd) < tenpow(-20));
}

TEST_CASE("conjugation symmetry") {
    PrecisionGuard g(100);
    auto ctx = ctx_new(100);
    auto pt = imag_pt();
    SeriesPoint ptc{pt.x.conj(), pt.y.conj()};
    auto v = a_double(pt, ctx);
    auto vc = a_double(ptc, ctx);
    CHECK(abs(vc.approx - v.approx.conj()) < tenpow(-45));
}

TEST_CASE("t_poly") {
    CHECK(t_poly(0, Int(7), Int(-3)) == 1);
    CHECK(t_poly(1, Int(7), Int(-3)) == 7);
    CHECK(t_poly(1, Int(62), Int(1)) == 62);
    // (z^2 + 62 z + 1)^2 = z^4 + 124 z^3 + 3846 z^2 + 124 z + 1
    CHECK(t_poly(2, Int(62), Int(1)) == 3846);

    // T_k(b,c) = (b^2-4c)^{k/2} P_k(b / sqrt(b^2-4c))
    PrecisionGuard g(100);
    auto ctx = ctx_new(100);
    Real disc = Real(62 * 62 - 4);
    Complex z{Real(62) / boost::multiprecision::sqrt(disc)};
    for (long k : {2L, 3L, 6L, 9L}) {
        Complex rhs = Complex(pow(disc, Real(k) / 2)) * legendre_P(k, z, ctx).approx;
        CHECK(abs(Complex(Real(t_poly(k, Int(62), Int(1)))) - rhs) < tenpow(-80));
    }
}

TEST_CASE("eval_pi_series") {
    PrecisionGuard g(120);
    auto ctx = ctx_new(120);
    Real pi_v = real_pi();

    PiSeriesSpec headline;
    headline.a = 1054;
    headline.b = 233;
    headline.form = SeriesForm::double_series;
    headline.pt = headline_pt();
    headline.target_over_pi = 520;
    auto hv = eval_pi_series(headline, ctx);
    CHECK(abs(hv.approx - Complex(Real(520) / pi_v)) + hv.err < tenpow(-40));

    PiSeriesSpec iv2;
    iv2.a = 340;
    iv2.b = 59;
    iv2.form = SeriesForm::t_form;
    iv2.base = GaussianRational(Rational(-1, 230400));   // -1/480^2
    iv2.tb = 62;
    iv2.tc = 1;
    iv2.target_over_pi = 120;
    auto tv = eval_pi_series(iv2, ctx);
    CHECK(abs(tv.approx - Complex(Real(120) / pi_v)) + tv.err < tenpow(-40));

    PiSeriesSpec zero = headline;
    zero.a = zero.b = 0;
    CHECK(abs(eval_pi_series(zero, ctx).approx) < tenpow(-40));
}
